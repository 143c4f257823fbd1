#pragma once

#include <complex>

#include "netdef/matrix.hpp"

namespace netdef {

// Eigendecomposition of a symmetric matrix. Eigenvalues ascending;
// eigenvectors orthonormal, stored as columns, each with its
// largest-magnitude component made positive.
struct SymmetricSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

SymmetricSpectrum symmetric_eig(const Matrix& w);

// Eigendecomposition of a general real matrix. Complex eigenvalues come
// out as conjugate pairs. Values sorted by descending real part, ties by
// descending imaginary part; columns of `vectors` follow the same order
// and are normalized to unit length with the largest-magnitude component
// rotated onto the positive real axis.
struct Spectrum {
  CVector values;
  CMatrix vectors;
};

// Throws NumericalError when the eigenvector basis is defective or its
// one-norm condition number exceeds 1e8.
Spectrum general_eig(const Matrix& m);

}  // namespace netdef
