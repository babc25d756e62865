#include <cctype>

#include "tabx/core.hpp"

namespace tabx {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  void advance(std::size_t n = 1) { pos_ += n; }

  [[noreturn]] void fail(const std::string& what) const { throw CompositionParseError(pos_, what); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// One or more "<count><code>" groups; stops at the first character that is not a digit.
template <std::size_t N>
void parse_counts(Cursor& cur, std::string_view alphabet, std::array<int, N>& counts, const char* what) {
  int groups = 0;
  while (is_digit(cur.peek())) {
    long count = 0;
    while (is_digit(cur.peek())) {
      count = count * 10 + (cur.peek() - '0');
      if (count > 1'000'000) cur.fail("count too large");
      cur.advance();
    }
    if (cur.done()) cur.fail(std::string("expected ") + what + " code after count");
    const auto code_pos = alphabet.find(cur.peek());
    if (code_pos == std::string_view::npos) {
      cur.fail(std::string("unknown ") + what + " code '" + cur.peek() + "'");
    }
    if (count == 0) cur.fail("count must be positive");
    counts[code_pos] += static_cast<int>(count);
    cur.advance();
    ++groups;
  }
  if (groups == 0) cur.fail(std::string("expected ") + what + " count");
}

std::string parse_variant(Cursor& cur, std::string_view text) {
  if (cur.peek() != '-') return {};
  cur.advance();
  const std::size_t start = cur.pos();
  while (!cur.done() && std::isalnum(static_cast<unsigned char>(cur.peek()))) cur.advance();
  if (cur.pos() == start) cur.fail("empty variant");
  return std::string(text.substr(start, cur.pos() - start));
}

template <std::size_t N>
void append_counts(std::string& out, std::string_view alphabet, const std::array<int, N>& counts) {
  for (std::size_t k = 0; k < N; ++k) {
    if (counts[k] > 0) {
      out += std::to_string(counts[k]);
      out += alphabet[k];
    }
  }
}

}  // namespace

CompositionParseError::CompositionParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("composition name, offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

int Composition::count(int team, char code) const {
  const auto k = kUnitCodes.find(code);
  if (k == std::string_view::npos) return 0;
  return team == kAllyTeam ? ally[k] : enemy[k];
}

int Composition::zone_count(char code) const {
  const auto k = kZoneCodes.find(code);
  return k == std::string_view::npos ? 0 : zones[k];
}

bool Composition::has_zones() const {
  for (int z : zones) {
    if (z > 0) return true;
  }
  return false;
}

Composition parse_composition_name(std::string_view name) {
  Cursor cur(name);
  Composition c;
  parse_counts(cur, kUnitCodes, c.ally, "unit");
  if (!cur.starts_with("vs")) cur.fail("expected 'vs'");
  cur.advance(2);
  parse_counts(cur, kUnitCodes, c.enemy, "unit");
  if (cur.peek() == '_') {
    cur.advance();
    parse_counts(cur, kZoneCodes, c.zones, "zone");
  }
  c.variant = parse_variant(cur, name);
  if (!cur.done()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");
  return c;
}

std::string format_composition_name(const Composition& c) {
  std::string out;
  append_counts(out, kUnitCodes, c.ally);
  out += "vs";
  append_counts(out, kUnitCodes, c.enemy);
  if (c.has_zones()) {
    out += '_';
    append_counts(out, kZoneCodes, c.zones);
  }
  if (!c.variant.empty()) out += "-" + c.variant;
  return out;
}

ZoneComposition parse_zone_composition(std::string_view name) {
  Cursor cur(name);
  ZoneComposition z;
  parse_counts(cur, kZoneCodes, z.zones, "zone");
  z.variant = parse_variant(cur, name);
  if (!cur.done()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");
  return z;
}

std::string format_zone_composition(const ZoneComposition& z) {
  std::string out;
  append_counts(out, kZoneCodes, z.zones);
  if (!z.variant.empty()) out += "-" + z.variant;
  return out;
}

}  // namespace tabx
