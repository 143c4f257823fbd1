#include "netdef/sysmodel.hpp"

#include <cmath>

#include "netdef/errors.hpp"

namespace netdef {

AttackStrategy classify_attack(double s, double r) {
  if (s == 0.0 && r == 0.0) return AttackStrategy::Constant;
  if (s == 0.0 && r > 0.0) return AttackStrategy::Linear;
  if (s > 0.0 && r == 0.0) return AttackStrategy::Exponential;
  return AttackStrategy::Other;
}

Vector attacker_trajectory(const AttackerModel& atk, const Vector& w0, double t) {
  if (w0.size() != atk.q()) throw UsageError("attacker_trajectory: w0 size mismatch");
  if (!(t >= 0)) throw UsageError("attacker_trajectory: t must be nonnegative");
  Vector w(atk.q());
  for (std::size_t i = 0; i < atk.q(); ++i) {
    const double s = atk.s[i];
    const double r = atk.r[i];
    if (s == 0.0) {
      w[i] = w0[i] + r * t;
    } else {
      const double e = std::exp(s * t);
      w[i] = e * w0[i] + (r / s) * (e - 1.0);
    }
  }
  return w;
}

AugmentedSystem augment(const NetworkSystem& sys, const AttackerModel& atk) {
  if (!sys.A.square()) throw NumericalError("augment: A not square");
  if (sys.H.rows() != sys.n() || sys.B.rows() != sys.n())
    throw NumericalError("augment: H/B row count must match A");
  if (atk.q() != sys.q())
    throw NumericalError("augment: attacker model size does not match H columns");
  if (atk.r.size() != atk.s.size()) throw NumericalError("augment: attacker s/r size mismatch");

  const std::size_t n = sys.n();
  const std::size_t q = sys.q();
  const std::size_t m = sys.m();

  AugmentedSystem aug;
  aug.n = n;
  aug.q = q;
  aug.m = m;

  aug.A_tilde = Matrix(n + q, n + q);
  aug.A_tilde.set_block(0, 0, sys.A);
  aug.A_tilde.set_block(0, n, sys.H);
  for (std::size_t i = 0; i < q; ++i) aug.A_tilde(n + i, n + i) = atk.s[i];

  aug.B_tilde = Matrix(n + q, m);
  aug.B_tilde.set_block(0, 0, sys.B);

  aug.C = Matrix(n, n + q);
  for (std::size_t i = 0; i < n; ++i) aug.C(i, i) = 1.0;

  aug.r_tilde = Vector(n + q, 0.0);
  for (std::size_t i = 0; i < q; ++i) aug.r_tilde[n + i] = atk.r[i];

  return aug;
}

}  // namespace netdef
