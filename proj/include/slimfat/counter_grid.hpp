#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slimfat {

// Row-major d x w matrix of counters.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, T{}) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& at(std::size_t i, std::size_t j) noexcept { return cells_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {cells_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {cells_.data() + i * cols_, cols_}; }

  std::span<const T> cells() const noexcept { return cells_; }
  std::vector<T>& storage() noexcept { return cells_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> cells_;
};

}  // namespace slimfat
