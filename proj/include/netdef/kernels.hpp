#pragma once

#include <vector>

#include "netdef/matrix.hpp"

namespace netdef {

// Matrix exponential by scaling-and-squaring with diagonal Pade
// approximants (degrees 3/5/7/9/13 chosen from the one-norm).
template <typename T>
Mat<T> expm_t(const Mat<T>& m);

// F = integral of e^{M s} ds over [0, T], via the block identity
// exp([[M, I], [0, 0]] T) whose upper-right block is F. Valid for
// singular M.
template <typename T>
Mat<T> expm_integral_t(const Mat<T>& m, T horizon);

// W = integral of e^{A t} B B' e^{A' t} dt over [0, T], Van Loan block
// construction; result symmetrized.
template <typename T>
Mat<T> gramian_t(const Mat<T>& a, const Mat<T>& b, T horizon);

// Solves W x = rhs for symmetric positive definite W by Cholesky.
// A nonpositive pivot raises ControllabilityError.
template <typename T>
std::vector<T> cholesky_solve_t(const Mat<T>& w, const std::vector<T>& rhs);

extern template Mat<double> expm_t<double>(const Mat<double>&);
extern template Mat<long double> expm_t<long double>(const Mat<long double>&);
extern template Mat<double> expm_integral_t<double>(const Mat<double>&, double);
extern template Mat<long double> expm_integral_t<long double>(const Mat<long double>&, long double);
extern template Mat<double> gramian_t<double>(const Mat<double>&, const Mat<double>&, double);
extern template Mat<long double> gramian_t<long double>(const Mat<long double>&, const Mat<long double>&, long double);
extern template std::vector<double> cholesky_solve_t<double>(const Mat<double>&, const std::vector<double>&);
extern template std::vector<long double> cholesky_solve_t<long double>(const Mat<long double>&, const std::vector<long double>&);

inline Matrix expm(const Matrix& m) { return expm_t<double>(m); }
inline Matrix expm_integral(const Matrix& m, double horizon) { return expm_integral_t<double>(m, horizon); }
inline Matrix finite_horizon_gramian(const Matrix& a, const Matrix& b, double horizon) {
  return gramian_t<double>(a, b, horizon);
}
inline Vector solve_spd(const Matrix& w, const Vector& rhs) { return cholesky_solve_t<double>(w, rhs); }

// General square solves by LU with partial pivoting (real and complex).
Matrix lu_solve(const Matrix& a, const Matrix& rhs);
Vector lu_solve(const Matrix& a, const Vector& rhs);
CVector lu_solve(const CMatrix& a, const CVector& rhs);
CMatrix lu_inverse(const CMatrix& a);

Mat<long double> widen(const Matrix& m);
Matrix narrow(const Mat<long double>& m);

}  // namespace netdef
