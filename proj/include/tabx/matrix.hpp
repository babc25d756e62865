#pragma once

#include <cstdint>
#include <vector>

namespace tabx {

/// Dense square boolean matrix, row-major.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  bool operator()(int i, int j) const { return cells_[index(i, j)] != 0; }
  void set(int i, int j, bool value = true) { cells_[index(i, j)] = value ? 1 : 0; }

  int row_count(int i) const {
    int c = 0;
    for (int j = 0; j < n_; ++j) c += cells_[index(i, j)];
    return c;
  }
  bool row_any(int i) const { return row_count(i) > 0; }
  bool column_any(int j) const {
    for (int i = 0; i < n_; ++i) {
      if (cells_[index(i, j)]) return true;
    }
    return false;
  }

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace tabx
