#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace secjam {

using UserId = std::size_t;
using Subcarrier = std::size_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense row-major matrix of doubles, rows = users, cols = subcarriers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::at index out of range");
    return data_[r * cols_ + c];
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace secjam
