#include "netdef/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netdef/errors.hpp"
#include "netdef/kernels.hpp"

namespace netdef {

namespace {

inline void jacobi_rotate(double& g, double& h, double s, double tau) {
  const double g0 = g, h0 = h;
  g = g0 - s * (h0 + g0 * tau);
  h = h0 + s * (g0 - h0 * tau);
}

// Deterministic sign fix: largest-magnitude component of each column
// made positive so repeated runs agree on eigenvector orientation.
void fix_column_signs(Matrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < 0)
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
  }
}

}  // namespace

SymmetricSpectrum symmetric_eig(const Matrix& w) {
  if (!w.square()) throw NumericalError("symmetric_eig: matrix not square");
  const std::size_t n = w.rows();
  const double asym_tol = 1e-10 * std::max(1.0, w.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(w(i, j) - w(j, i)) > asym_tol)
        throw NumericalError("symmetric_eig: input not symmetric within tolerance");

  // Cyclic Jacobi with the classic threshold schedule.
  Matrix a = w;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = avg;
      a(j, i) = avg;
    }
  Matrix v = Matrix::identity(n);
  Vector d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) b[i] = d[i] = a(i, i);

  const int max_sweeps = 100;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double sm = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) sm += std::abs(a(p, q));
    if (sm == 0.0) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
      SymmetricSpectrum out;
      out.eigenvalues.resize(n);
      out.eigenvectors = Matrix(n, n);
      for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
      }
      fix_column_signs(out.eigenvectors);
      return out;
    }
    const double tresh = (sweep < 4) ? 0.2 * sm / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0.0;
        } else if (std::abs(a(p, q)) > tresh) {
          double h = d[q] - d[p];
          double t;
          if (std::abs(h) + g == std::abs(h)) {
            t = a(p, q) / h;
          } else {
            const double theta = 0.5 * h / a(p, q);
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          h = t * a(p, q);
          z[p] -= h;
          z[q] += h;
          d[p] -= h;
          d[q] += h;
          a(p, q) = 0.0;
          for (std::size_t j = 0; j < p; ++j) jacobi_rotate(a(j, p), a(j, q), s, tau);
          for (std::size_t j = p + 1; j < q; ++j) jacobi_rotate(a(p, j), a(j, q), s, tau);
          for (std::size_t j = q + 1; j < n; ++j) jacobi_rotate(a(p, j), a(q, j), s, tau);
          for (std::size_t j = 0; j < n; ++j) jacobi_rotate(v(j, p), v(j, q), s, tau);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  throw NumericalError("symmetric_eig: Jacobi did not converge");
}

namespace {

// Complex scalar division, Smith's algorithm.
void cdiv(double xr, double xi, double yr, double yi, double& zr, double& zi) {
  if (std::abs(yr) > std::abs(yi)) {
    const double r = yi / yr;
    const double d = yr + r * yi;
    zr = (xr + r * xi) / d;
    zi = (xi - r * xr) / d;
  } else {
    const double r = yr / yi;
    const double d = yi + r * yr;
    zr = (r * xr + xi) / d;
    zi = (r * xi - xr) / d;
  }
}

// Householder reduction to upper Hessenberg form, accumulating the
// orthogonal transformation in v. EISPACK orthes/ortran.
void hessenberg(Matrix& h, Matrix& v) {
  const std::size_t nn = h.rows();
  if (nn < 3) {
    v = Matrix::identity(nn);
    return;
  }
  const std::size_t low = 0;
  const std::size_t high = nn - 1;
  Vector ort(nn, 0.0);

  for (std::size_t m = low + 1; m <= high - 1; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
    if (scale != 0.0) {
      double hh = 0.0;
      for (std::size_t i = high + 1; i-- > m;) {
        ort[i] = h(i, m - 1) / scale;
        hh += ort[i] * ort[i];
      }
      double g = std::sqrt(hh);
      if (ort[m] > 0) g = -g;
      hh -= ort[m] * g;
      ort[m] -= g;
      for (std::size_t j = m; j < nn; ++j) {
        double f = 0.0;
        for (std::size_t i = high + 1; i-- > m;) f += ort[i] * h(i, j);
        f /= hh;
        for (std::size_t i = m; i <= high; ++i) h(i, j) -= f * ort[i];
      }
      for (std::size_t i = 0; i <= high; ++i) {
        double f = 0.0;
        for (std::size_t j = high + 1; j-- > m;) f += ort[j] * h(i, j);
        f /= hh;
        for (std::size_t j = m; j <= high; ++j) h(i, j) -= f * ort[j];
      }
      ort[m] = scale * ort[m];
      h(m, m - 1) = scale * g;
    }
  }

  v = Matrix::identity(nn);
  for (std::size_t m = high - 1; m >= low + 1; --m) {
    if (h(m, m - 1) != 0.0) {
      for (std::size_t i = m + 1; i <= high; ++i) ort[i] = h(i, m - 1);
      for (std::size_t j = m; j <= high; ++j) {
        double g = 0.0;
        for (std::size_t i = m; i <= high; ++i) g += ort[i] * v(i, j);
        g = (g / ort[m]) / h(m, m - 1);
        for (std::size_t i = m; i <= high; ++i) v(i, j) += g * ort[i];
      }
    }
    if (m == low + 1) break;
  }
}

// Francis double-shift QR on a Hessenberg matrix with eigenvector
// back-substitution; EISPACK hqr2. Eigenvalues land in (d, e); the
// real-packed eigenvectors overwrite v.
void hqr2(Matrix& h, Matrix& v, Vector& d, Vector& e) {
  const int nn = static_cast<int>(h.rows());
  int n = nn - 1;
  const int low = 0;
  const int high = nn - 1;
  const double eps = std::ldexp(1.0, -52);
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, t, w, x, y;

  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));
  if (norm == 0.0) return;  // zero matrix: d = e = 0, eigenvectors = v

  int iter = 0;
  long total_iter = 0;
  while (n >= low) {
    if (++total_iter > 64L * nn * nn + 1024) throw NumericalError("general_eig: QR iteration failed to converge");

    int l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      h(n, n) += exshift;
      d[n] = h(n, n);
      e[n] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0) {  // real pair
        z = (p >= 0) ? p + z : p - z;
        d[n - 1] = x + z;
        d[n] = d[n - 1];
        if (z != 0.0) d[n] = x - w / z;
        e[n - 1] = 0.0;
        e[n] = 0.0;
        x = h(n, n - 1);
        s = std::abs(x) + std::abs(z);
        p = x / s;
        q = z / s;
        r = std::sqrt(p * p + q * q);
        p /= r;
        q /= r;
        for (int j = n - 1; j < nn; ++j) {
          z = h(n - 1, j);
          h(n - 1, j) = q * z + p * h(n, j);
          h(n, j) = q * h(n, j) - p * z;
        }
        for (int i = 0; i <= n; ++i) {
          z = h(i, n - 1);
          h(i, n - 1) = q * z + p * h(i, n);
          h(i, n) = q * h(i, n) - p * z;
        }
        for (int i = low; i <= high; ++i) {
          z = v(i, n - 1);
          v(i, n - 1) = q * z + p * v(i, n);
          v(i, n) = q * v(i, n) - p * z;
        }
      } else {  // complex pair
        d[n - 1] = x + p;
        d[n] = x + p;
        e[n - 1] = z;
        e[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      // Form shift.
      x = h(n, n);
      y = 0.0;
      w = 0.0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }
      if (iter == 10 || iter == 20) {  // exceptional shift
        exshift += x;
        for (int i = low; i <= n; ++i) h(i, i) -= x;
        s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++iter;

      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) *
                   (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)))))
          break;
        --m;
      }
      for (int i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      // Double QR step on rows l..n, columns m..n.
      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s != 0) {
          if (k != m)
            h(k, k - 1) = -s * x;
          else if (l != m)
            h(k, k - 1) = -h(k, k - 1);
          p += s;
          x = p / s;
          y = q / s;
          z = r / s;
          q /= p;
          r /= p;

          for (int j = k; j < nn; ++j) {
            p = h(k, j) + q * h(k + 1, j);
            if (notlast) {
              p += r * h(k + 2, j);
              h(k + 2, j) -= p * z;
            }
            h(k, j) -= p * x;
            h(k + 1, j) -= p * y;
          }
          for (int i = 0; i <= std::min(n, k + 3); ++i) {
            p = x * h(i, k) + y * h(i, k + 1);
            if (notlast) {
              p += z * h(i, k + 2);
              h(i, k + 2) -= p * r;
            }
            h(i, k) -= p;
            h(i, k + 1) -= p * q;
          }
          for (int i = low; i <= high; ++i) {
            p = x * v(i, k) + y * v(i, k + 1);
            if (notlast) {
              p += z * v(i, k + 2);
              v(i, k + 2) -= p * r;
            }
            v(i, k) -= p;
            v(i, k + 1) -= p * q;
          }
        }
      }
    }
  }

  // Back substitution to find vectors of the upper quasi-triangular form.
  for (n = nn - 1; n >= 0; --n) {
    p = d[n];
    q = e[n];
    if (q == 0) {  // real eigenvalue
      int l = n;
      h(n, n) = 1.0;
      for (int i = n - 1; i >= 0; --i) {
        w = h(i, i) - p;
        r = 0.0;
        for (int j = l; j <= n; ++j) r += h(i, j) * h(j, n);
        if (e[i] < 0.0) {
          z = w;
          s = r;
        } else {
          l = i;
          if (e[i] == 0.0) {
            h(i, n) = (w != 0.0) ? -r / w : -r / (eps * norm);
          } else {  // solve the real 2x2 block
            x = h(i, i + 1);
            y = h(i + 1, i);
            q = (d[i] - p) * (d[i] - p) + e[i] * e[i];
            t = (x * s - z * r) / q;
            h(i, n) = t;
            h(i + 1, n) =
                (std::abs(x) > std::abs(z)) ? (-r - w * t) / x : (-s - y * t) / z;
          }
          t = std::abs(h(i, n));
          if ((eps * t) * t > 1)
            for (int j = i; j <= n; ++j) h(j, n) /= t;
        }
      }
    } else if (q < 0) {  // complex pair; vector for the eigenvalue with e > 0
      int l = n - 1;
      if (std::abs(h(n, n - 1)) > std::abs(h(n - 1, n))) {
        h(n - 1, n - 1) = q / h(n, n - 1);
        h(n - 1, n) = -(h(n, n) - p) / h(n, n - 1);
      } else {
        double zr, zi;
        cdiv(0.0, -h(n - 1, n), h(n - 1, n - 1) - p, q, zr, zi);
        h(n - 1, n - 1) = zr;
        h(n - 1, n) = zi;
      }
      h(n, n - 1) = 0.0;
      h(n, n) = 1.0;
      for (int i = n - 2; i >= 0; --i) {
        double ra = 0.0, sa = 0.0;
        for (int j = l; j <= n; ++j) {
          ra += h(i, j) * h(j, n - 1);
          sa += h(i, j) * h(j, n);
        }
        w = h(i, i) - p;
        if (e[i] < 0.0) {
          z = w;
          r = ra;
          s = sa;
        } else {
          l = i;
          if (e[i] == 0) {
            double zr, zi;
            cdiv(-ra, -sa, w, q, zr, zi);
            h(i, n - 1) = zr;
            h(i, n) = zi;
          } else {
            x = h(i, i + 1);
            y = h(i + 1, i);
            double vr = (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
            const double vi = (d[i] - p) * 2.0 * q;
            if (vr == 0.0 && vi == 0.0)
              vr = eps * norm *
                   (std::abs(w) + std::abs(q) + std::abs(x) + std::abs(y) + std::abs(z));
            double zr, zi;
            cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi, zr, zi);
            h(i, n - 1) = zr;
            h(i, n) = zi;
            if (std::abs(x) > (std::abs(z) + std::abs(q))) {
              h(i + 1, n - 1) = (-ra - w * h(i, n - 1) + q * h(i, n)) / x;
              h(i + 1, n) = (-sa - w * h(i, n) - q * h(i, n - 1)) / x;
            } else {
              cdiv(-r - y * h(i, n - 1), -s - y * h(i, n), z, q, zr, zi);
              h(i + 1, n - 1) = zr;
              h(i + 1, n) = zi;
            }
          }
          t = std::max(std::abs(h(i, n - 1)), std::abs(h(i, n)));
          if ((eps * t) * t > 1)
            for (int j = i; j <= n; ++j) {
              h(j, n - 1) /= t;
              h(j, n) /= t;
            }
        }
      }
    }
  }

  // Back transform to the original basis.
  for (int j = nn - 1; j >= low; --j)
    for (int i = low; i <= high; ++i) {
      z = 0.0;
      for (int k = low; k <= std::min(j, high); ++k) z += v(i, k) * h(k, j);
      v(i, j) = z;
    }
}

}  // namespace

Spectrum general_eig(const Matrix& m) {
  if (!m.square()) throw NumericalError("general_eig: matrix not square");
  if (!m.all_finite()) throw NumericalError("general_eig: non-finite entries");
  const std::size_t n = m.rows();
  if (n == 0) throw NumericalError("general_eig: empty matrix");

  Matrix h = m;
  Matrix v;
  hessenberg(h, v);
  Vector d(n, 0.0), e(n, 0.0);
  hqr2(h, v, d, e);

  // Unpack the real-packed eigenvectors into complex columns.
  CMatrix vc(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (e[j] == 0.0) {
      for (std::size_t i = 0; i < n; ++i) vc(i, j) = {v(i, j), 0.0};
    } else if (e[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        vc(i, j) = {v(i, j), v(i, j + 1)};
        vc(i, j + 1) = {v(i, j), -v(i, j + 1)};
      }
      ++j;
    }
  }

  // Normalize: unit length, largest-magnitude component real positive.
  for (std::size_t j = 0; j < n; ++j) {
    double len = 0;
    std::size_t arg = 0;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(vc(i, j));
      len += a * a;
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    len = std::sqrt(len);
    if (len == 0) throw NumericalError("general_eig: zero eigenvector");
    std::complex<double> phase = vc(arg, j) / std::abs(vc(arg, j));
    const std::complex<double> scale = 1.0 / (len * phase);
    for (std::size_t i = 0; i < n; ++i) vc(i, j) *= scale;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d[a] != d[b]) return d[a] > d[b];
    return e[a] > e[b];
  });

  Spectrum out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = {d[order[j]], e[order[j]]};
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vc(i, order[j]);
  }

  // Diagonalizability gate: one-norm condition of the eigenvector basis.
  const CMatrix vinv = [&] {
    try {
      return lu_inverse(out.vectors);
    } catch (const NumericalError&) {
      throw NumericalError("general_eig: defective eigenbasis (singular eigenvector matrix)");
    }
  }();
  const double cond = out.vectors.norm_one() * vinv.norm_one();
  if (!(cond < 1e8))
    throw NumericalError("general_eig: eigenvector basis ill-conditioned (cond > 1e8)");

  return out;
}

}  // namespace netdef
