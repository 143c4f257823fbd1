#include "netdef/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "netdef/errors.hpp"

namespace netdef {

namespace {

// LU factorization with partial pivoting, in place. Returns the pivot
// permutation; throws on (numerically) singular input.
template <typename T>
std::vector<std::size_t> lu_factor(Mat<T>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > 0)) throw NumericalError("lu_solve: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(piv[k], piv[p]);
    }
    const T pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a(i, k) / pivot;
      a(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return piv;
}

template <typename T>
Mat<T> lu_solve_impl(const Mat<T>& a, const Mat<T>& rhs) {
  if (!a.square()) throw NumericalError("lu_solve: matrix not square");
  if (a.rows() != rhs.rows()) throw NumericalError("lu_solve: rhs rows mismatch");
  Mat<T> lu = a;
  const auto piv = lu_factor(lu);
  const std::size_t n = a.rows();
  const std::size_t m = rhs.cols();
  Mat<T> x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = rhs(piv[i], j);
  // forward
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m_ik = lu(i, k);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= m_ik * x(k, j);
    }
  // backward
  for (std::size_t k = n; k-- > 0;) {
    const T d = lu(k, k);
    for (std::size_t j = 0; j < m; ++j) x(k, j) /= d;
    for (std::size_t i = 0; i < k; ++i) {
      const T m_ik = lu(i, k);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= m_ik * x(k, j);
    }
  }
  return x;
}

template <typename T>
struct PadeConfig;

template <>
struct PadeConfig<double> {
  // Degrees and one-norm thresholds for double precision.
  static constexpr std::array<int, 5> degrees{3, 5, 7, 9, 13};
  static constexpr std::array<double, 5> thetas{1.495585217958292e-2, 2.539398330063230e-1,
                                                9.504178996162932e-1, 2.097847961257068e0,
                                                5.371920351148152e0};
};

template <>
struct PadeConfig<long double> {
  // Extended precision: keep degree 13 only, with a threshold small
  // enough that the truncation error sits below the 64-bit mantissa.
  static constexpr std::array<int, 1> degrees{13};
  static constexpr std::array<long double, 1> thetas{2.0L};
};

template <typename T>
const std::vector<T>& pade_coefficients(int degree) {
  static const std::vector<T> b3{120, 60, 12, 1};
  static const std::vector<T> b5{30240, 15120, 3360, 420, 30, 1};
  static const std::vector<T> b7{17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
  static const std::vector<T> b9{17643225600.0L, 8821612800.0L, 2075673600.0L, 302702400.0L,
                                 30270240.0L,    2162160.0L,    110880.0L,     3960.0L,
                                 90.0L,          1.0L};
  static const std::vector<T> b13{64764752532480000.0L,
                                  32382376266240000.0L,
                                  7771770303897600.0L,
                                  1187353796428800.0L,
                                  129060195264000.0L,
                                  10559470521600.0L,
                                  670442572800.0L,
                                  33522128640.0L,
                                  1323241920.0L,
                                  40840800.0L,
                                  960960.0L,
                                  16380.0L,
                                  182.0L,
                                  1.0L};
  switch (degree) {
    case 3: return b3;
    case 5: return b5;
    case 7: return b7;
    case 9: return b9;
    default: return b13;
  }
}

// exp(A) for ||A||_1 within the chosen degree's threshold.
template <typename T>
Mat<T> pade_expm(const Mat<T>& a, int degree) {
  const std::size_t n = a.rows();
  const auto& b = pade_coefficients<T>(degree);
  const Mat<T> id = Mat<T>::identity(n);
  const Mat<T> a2 = matmul(a, a);
  Mat<T> u(n, n), v(n, n);
  if (degree == 13) {
    const Mat<T> a4 = matmul(a2, a2);
    const Mat<T> a6 = matmul(a2, a4);
    Mat<T> w1 = b[13] * a6 + b[11] * a4 + b[9] * a2;
    Mat<T> w2 = matmul(a6, w1) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
    u = matmul(a, w2);
    Mat<T> z1 = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = matmul(a6, z1) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  } else {
    std::vector<Mat<T>> pw;  // even powers I, A2, A4, ...
    pw.push_back(id);
    pw.push_back(a2);
    for (int k = 2; 2 * k <= degree - 1; ++k) pw.push_back(matmul(pw.back(), a2));
    Mat<T> us(n, n), vs(n, n);
    for (int k = 0; 2 * k + 1 <= degree; ++k) us += b[2 * k + 1] * pw[k];
    for (int k = 0; 2 * k <= degree; ++k) vs += b[2 * k] * pw[k];
    u = matmul(a, us);
    v = vs;
  }
  return lu_solve_impl<T>(v - u, v + u);
}

}  // namespace

template <typename T>
Mat<T> expm_t(const Mat<T>& m) {
  if (!m.square()) throw NumericalError("expm: matrix not square");
  if (!m.all_finite()) throw NumericalError("expm: non-finite entries");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const double nrm = m.norm_one();
  if (nrm > 1e8) throw NumericalError("expm: norm too large for reliable evaluation");

  const auto& degrees = PadeConfig<T>::degrees;
  const auto& thetas = PadeConfig<T>::thetas;
  for (std::size_t k = 0; k + 1 < degrees.size(); ++k) {
    if (nrm <= static_cast<double>(thetas[k])) return pade_expm(m, degrees[k]);
  }
  const double theta_top = static_cast<double>(thetas.back());
  int s = 0;
  if (nrm > theta_top) s = static_cast<int>(std::ceil(std::log2(nrm / theta_top)));
  Mat<T> scaled = m;
  scaled *= static_cast<T>(std::ldexp(1.0, -s));
  Mat<T> e = pade_expm(scaled, degrees.back());
  for (int i = 0; i < s; ++i) e = matmul(e, e);
  if (!e.all_finite()) throw NumericalError("expm: overflow during squaring");
  return e;
}

template <typename T>
Mat<T> expm_integral_t(const Mat<T>& m, T horizon) {
  if (!m.square()) throw NumericalError("expm_integral: matrix not square");
  if (!(horizon >= 0)) throw UsageError("expm_integral: negative horizon");
  const std::size_t n = m.rows();
  Mat<T> block(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) block(i, j) = m(i, j) * horizon;
    block(i, n + i) = horizon;
  }
  const Mat<T> e = expm_t(block);
  return e.block(0, n, n, n);
}

template <typename T>
Mat<T> gramian_t(const Mat<T>& a, const Mat<T>& b, T horizon) {
  if (!a.square()) throw NumericalError("gramian: A not square");
  if (b.rows() != a.rows()) throw NumericalError("gramian: B rows mismatch");
  if (!(horizon > 0)) throw UsageError("gramian: horizon must be positive");
  const std::size_t n = a.rows();
  // Q = B B'
  Mat<T> q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T s{};
      for (std::size_t k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
      q(i, j) = s;
    }
  // exp([[-A, Q], [0, A']] T); W = Z22' * Z12
  Mat<T> block(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      block(i, j) = -a(i, j) * horizon;
      block(i, n + j) = q(i, j) * horizon;
      block(n + i, n + j) = a(j, i) * horizon;
    }
  const Mat<T> e = expm_t(block);
  const Mat<T> z12 = e.block(0, n, n, n);
  const Mat<T> z22 = e.block(n, n, n, n);
  Mat<T> w = matmul(z22.transposed(), z12);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const T avg = (w(i, j) + w(j, i)) / T{2};
      w(i, j) = avg;
      w(j, i) = avg;
    }
  return w;
}

template <typename T>
std::vector<T> cholesky_solve_t(const Mat<T>& w, const std::vector<T>& rhs) {
  if (!w.square() || w.rows() != rhs.size()) throw NumericalError("solve_spd: dimension mismatch");
  const std::size_t n = w.rows();
  T max_diag{};
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(w(i, i)));
  const T tol = static_cast<T>(n) * std::numeric_limits<T>::epsilon() * max_diag;

  Mat<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T d = w(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > tol)) {
      throw ControllabilityError(
          "solve_spd: Gramian numerically singular; the pair (A, B) is not "
          "controllable over this horizon");
    }
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = w(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  // forward then backward substitution
  std::vector<T> y(rhs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
    y[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

template Mat<double> expm_t<double>(const Mat<double>&);
template Mat<long double> expm_t<long double>(const Mat<long double>&);
template Mat<double> expm_integral_t<double>(const Mat<double>&, double);
template Mat<long double> expm_integral_t<long double>(const Mat<long double>&, long double);
template Mat<double> gramian_t<double>(const Mat<double>&, const Mat<double>&, double);
template Mat<long double> gramian_t<long double>(const Mat<long double>&, const Mat<long double>&,
                                                 long double);
template std::vector<double> cholesky_solve_t<double>(const Mat<double>&,
                                                      const std::vector<double>&);
template std::vector<long double> cholesky_solve_t<long double>(const Mat<long double>&,
                                                                const std::vector<long double>&);

Matrix lu_solve(const Matrix& a, const Matrix& rhs) { return lu_solve_impl<double>(a, rhs); }

Vector lu_solve(const Matrix& a, const Vector& rhs) {
  Matrix r(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) r(i, 0) = rhs[i];
  const Matrix x = lu_solve_impl<double>(a, r);
  Vector out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x(i, 0);
  return out;
}

CVector lu_solve(const CMatrix& a, const CVector& rhs) {
  CMatrix r(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) r(i, 0) = rhs[i];
  const CMatrix x = lu_solve_impl<std::complex<double>>(a, r);
  CVector out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x(i, 0);
  return out;
}

CMatrix lu_inverse(const CMatrix& a) {
  return lu_solve_impl<std::complex<double>>(a, CMatrix::identity(a.rows()));
}

Mat<long double> widen(const Matrix& m) {
  Mat<long double> w(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return w;
}

Matrix narrow(const Mat<long double>& m) {
  Matrix w(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = static_cast<double>(m(i, j));
  return w;
}

}  // namespace netdef
