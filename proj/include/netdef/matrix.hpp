#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "netdef/errors.hpp"

namespace netdef {

// Dense row-major matrix. Sized for desk-scale problems (a few hundred
// rows); no sparsity, no expression templates.
template <typename T>
class Mat {
 public:
  Mat() = default;

  Mat(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Mat& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, T s) { return a *= s; }
  friend Mat operator*(T s, Mat a) { return a *= s; }

  // max column abs sum
  double norm_one() const {
    double best = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
      if (s > best) best = s;
    }
    return best;
  }

  // max row abs sum
  double norm_inf() const {
    double best = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
      if (s > best) best = s;
    }
    return best;
  }

  double norm_fro() const {
    double s = 0;
    for (const auto& v : data_) s += static_cast<double>(std::norm(std::complex<double>(v)));
    return std::sqrt(s);
  }

  double max_abs() const {
    double best = 0;
    for (const auto& v : data_) best = std::max(best, static_cast<double>(std::abs(v)));
    return best;
  }

  bool all_finite() const {
    for (const auto& v : data_)
      if (!std::isfinite(static_cast<double>(std::abs(v)))) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = Mat<double>;
using CMatrix = Mat<std::complex<double>>;
using Vector = std::vector<double>;
using CVector = std::vector<std::complex<double>>;

namespace detail {

// One output row of C = A * B, k-outer so each C entry accumulates in a
// fixed order. Both the serial and the parallel product call this, which
// keeps their results bitwise identical.
template <typename T>
inline void matmul_row(const Mat<T>& a, const Mat<T>& b, Mat<T>& c, std::size_t i) {
  const std::size_t kk = a.cols();
  const std::size_t nn = b.cols();
  T* ci = c.row(i);
  const T* ai = a.row(i);
  for (std::size_t k = 0; k < kk; ++k) {
    const T aik = ai[k];
    const T* bk = b.row(k);
    for (std::size_t j = 0; j < nn; ++j) ci[j] += aik * bk[j];
  }
}

template <typename T>
inline void check_mul_shapes(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw NumericalError("matmul: inner dimensions disagree");
}

}  // namespace detail

// Reference product, kept for correctness and benchmark comparisons.
template <typename T>
Mat<T> matmul_serial(const Mat<T>& a, const Mat<T>& b) {
  detail::check_mul_shapes(a, b);
  Mat<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) detail::matmul_row(a, b, c, i);
  return c;
}

// Row-partitioned parallel product; same per-entry arithmetic order as
// matmul_serial, so results match it bitwise for any thread count.
template <typename T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b) {
  detail::check_mul_shapes(a, b);
  Mat<T> c(a.rows(), b.cols());
  const std::ptrdiff_t nr = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (nr > 63)
  for (std::ptrdiff_t i = 0; i < nr; ++i)
    detail::matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

template <typename T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  return matmul(a, b);
}

template <typename T>
std::vector<T> matvec(const Mat<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw NumericalError("matvec: dimension mismatch");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const T* ai = a.row(i);
    T s{};
    for (std::size_t j = 0; j < x.size(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

inline Vector operator-(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vector operator+(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vector operator*(double s, Vector v) {
  for (auto& x : v) x *= s;
  return v;
}

}  // namespace netdef
