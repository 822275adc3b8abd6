#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "oicrel/error.hpp"

namespace oicrel {

/// Dense row-major matrix. Rows index OICs, columns index functions
/// everywhere in this library.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::ShapeMismatch, "ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  T& flat(std::size_t k) { return data_[k]; }
  const T& flat(std::size_t k) const { return data_[k]; }

  const std::vector<T>& data() const noexcept { return data_; }

  template <typename U>
  bool same_shape(const Matrix<U>& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using BitMatrix = Matrix<unsigned char>;
using RealMatrix = Matrix<double>;

}  // namespace oicrel
