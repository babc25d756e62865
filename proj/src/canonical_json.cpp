#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tabx/canonical_json.hpp"

namespace tabx {

namespace {

void write(std::string& out, const nlohmann::json& v, int indent, int depth);

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write_string(std::string& out, const std::string& s) { out += nlohmann::json(s).dump(-1, ' ', false); }

void write(std::string& out, const nlohmann::json& v, int indent, int depth) {
  using nlohmann::json;
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      // nlohmann's default object is a std::map, so iteration is already sorted.
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        write_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        write(out, e, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_number(v.get<double>());
      return;
    case json::value_t::string:
      write_string(out, v.get_ref<const std::string&>());
      return;
    case json::value_t::discarded:
      throw std::invalid_argument("canonical_dump: discarded value");
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot serialize a non-finite number");
  if (value == 0.0) return "0";

  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  std::string sci(buf, res.ptr);

  std::string sign;
  if (sci[0] == '-') {
    sign = "-";
    sci.erase(0, 1);
  }
  const auto e_pos = sci.find('e');
  std::string digits;
  for (std::size_t k = 0; k < e_pos; ++k) {
    if (sci[k] != '.') digits += sci[k];
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const int exp10 = std::stoi(sci.substr(e_pos + 1));
  const int k = static_cast<int>(digits.size());
  const int n = exp10 + 1;  // value = 0.digits * 10^n

  std::string out = sign;
  if (k <= n && n <= 21) {
    out += digits;
    out.append(static_cast<std::size_t>(n - k), '0');
  } else if (0 < n && n <= 21) {
    out += digits.substr(0, n);
    out += '.';
    out += digits.substr(n);
  } else if (-6 < n && n <= 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-n), '0');
    out += digits;
  } else {
    out += digits[0];
    if (k > 1) {
      out += '.';
      out += digits.substr(1);
    }
    out += 'e';
    out += n - 1 >= 0 ? '+' : '-';
    out += std::to_string(std::abs(n - 1));
  }
  return out;
}

std::string canonical_dump(const nlohmann::json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

}  // namespace tabx
