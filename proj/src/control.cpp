#include "netdef/control.hpp"

#include <cmath>
#include <limits>

#include "netdef/errors.hpp"
#include "netdef/kernels.hpp"

namespace netdef {

namespace {

Vector stacked_state(const ControlProblem& p) {
  Vector x(p.aug.n + p.aug.q);
  for (std::size_t i = 0; i < p.aug.n; ++i) x[i] = p.x0[i];
  for (std::size_t i = 0; i < p.aug.q; ++i) x[p.aug.n + i] = p.w0[i];
  return x;
}

NetworkSystem embedded_network(const ControlProblem& p) {
  NetworkSystem sys;
  sys.A = p.aug.A_tilde.block(0, 0, p.aug.n, p.aug.n);
  sys.H = p.aug.A_tilde.block(0, p.aug.n, p.aug.n, p.aug.q);
  sys.B = p.aug.B_tilde.block(0, 0, p.aug.n, p.aug.m);
  return sys;
}

// J(lambda) = (e^{lambda dt} - 1) / lambda with the removable
// singularity filled by its series for small |lambda dt|.
std::complex<double> j_coefficient(std::complex<double> lambda, double dt) {
  const std::complex<double> z = lambda * dt;
  if (std::abs(z) < 1e-8) {
    return dt * (1.0 + z / 2.0 + z * z / 6.0);
  }
  return (std::exp(z) - 1.0) / lambda;
}

}  // namespace

void ControlProblem::validate() const {
  if (!(t_f > t0)) throw UsageError("control problem: t_f must exceed t0");
  if (x0.size() != aug.n || w0.size() != aug.q)
    throw UsageError("control problem: x0/w0 lengths must match system dimensions");
  if (!y_f.empty() && y_f.size() != aug.n)
    throw UsageError("control problem: y_f length must be n");
}

ControlProblem make_control_problem(const NetworkSystem& sys, const AttackerModel& atk,
                                    Vector x0, Vector w0, double t0, double t_f) {
  ControlProblem p;
  p.aug = augment(sys, atk);
  p.x0 = std::move(x0);
  p.w0 = std::move(w0);
  p.y_f = Vector(p.aug.n, 0.0);
  p.t0 = t0;
  p.t_f = t_f;
  p.validate();
  return p;
}

Matrix output_gramian(const NetworkSystem& sys, double T) {
  return finite_horizon_gramian(sys.A, sys.B, T);
}

Matrix output_gramian(const ControlProblem& p) {
  const NetworkSystem sys = embedded_network(p);
  return finite_horizon_gramian(sys.A, sys.B, p.t_f - p.t0);
}

Vector maneuver_beta(const ControlProblem& p) {
  p.validate();
  const double dt = p.t_f - p.t0;
  const std::size_t n = p.aug.n;

  Matrix at = p.aug.A_tilde;
  at *= dt;
  const Matrix e = expm(at);
  const Vector x0 = stacked_state(p);
  const Vector flow = matvec(e, x0);

  const Matrix f = expm_integral(p.aug.A_tilde, dt);
  const Vector drive = matvec(f, p.aug.r_tilde);

  Vector beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    beta[i] = flow[i] + drive[i];
    if (!p.y_f.empty()) beta[i] -= p.y_f[i];
  }
  return beta;
}

Vector OptimalControl::eval(double t) const {
  Matrix at = a_tilde_t;
  at *= (t_f - t);
  const Matrix e = expm(at);
  const Vector w = matvec(e, ct_z);
  Vector u = matvec(b_tilde_t, w);
  for (auto& v : u) v = -v;
  return u;
}

OptimalControl make_optimal_control(const ControlProblem& p) {
  p.validate();
  const Matrix wp = output_gramian(p);
  const Vector beta = maneuver_beta(p);
  const Vector z = solve_spd(wp, beta);

  OptimalControl oc;
  oc.a_tilde_t = p.aug.A_tilde.transposed();
  oc.b_tilde_t = p.aug.B_tilde.transposed();
  oc.ct_z = Vector(p.aug.n + p.aug.q, 0.0);
  for (std::size_t i = 0; i < p.aug.n; ++i) oc.ct_z[i] = z[i];
  oc.t_f = p.t_f;
  return oc;
}

Vector optimal_input(const ControlProblem& p, double t) {
  if (t < p.t0 || t > p.t_f) throw UsageError("optimal_input: t outside [t0, t_f]");
  return make_optimal_control(p).eval(t);
}

double min_energy(const ControlProblem& p) {
  p.validate();
  const Matrix wp = output_gramian(p);
  const Vector beta = maneuver_beta(p);
  const Vector z = solve_spd(wp, beta);
  return dot(beta, z);
}

EnergyReport energy_decomposition(const ControlProblem& p) {
  return energy_decomposition(p, symmetric_eig(output_gramian(p)));
}

EnergyReport energy_decomposition(const ControlProblem& p, const SymmetricSpectrum& wp_spectrum) {
  p.validate();
  const std::size_t n = p.aug.n;
  if (wp_spectrum.eigenvalues.size() != n)
    throw NumericalError("energy_decomposition: spectrum size mismatch");

  EnergyReport rep;
  rep.beta = maneuver_beta(p);
  rep.beta_norm2 = dot(rep.beta, rep.beta);
  rep.mu1 = wp_spectrum.eigenvalues[0];
  rep.mu2 = n > 1 ? wp_spectrum.eigenvalues[1] : std::numeric_limits<double>::quiet_NaN();
  rep.w1 = Vector(n);
  for (std::size_t i = 0; i < n; ++i) rep.w1[i] = wp_spectrum.eigenvectors(i, 0);
  rep.E2 = 1.0 / rep.mu1;
  rep.low_confidence_rank1 = n > 1 && rep.mu2 < 10.0 * rep.mu1;
  rep.modal_terms = Vector(n, 0.0);

  if (rep.beta_norm2 == 0.0) {
    rep.zero_maneuver = true;
    rep.rank1_quality = 1.0;
    return rep;
  }

  const double norm = std::sqrt(rep.beta_norm2);
  rep.n_dir = Vector(n);
  for (std::size_t i = 0; i < n; ++i) rep.n_dir[i] = rep.beta[i] / norm;

  for (std::size_t k = 0; k < n; ++k) {
    double overlap = 0;
    for (std::size_t i = 0; i < n; ++i) overlap += rep.n_dir[i] * wp_spectrum.eigenvectors(i, k);
    rep.modal_terms[k] = rep.beta_norm2 * overlap * overlap / wp_spectrum.eigenvalues[k];
    if (k == 0) rep.nTw1 = overlap;
  }
  for (double term : rep.modal_terms) rep.E_exact += term;

  rep.E1 = rep.beta_norm2;
  rep.E3 = rep.nTw1 * rep.nTw1;
  rep.E_rank1 = rep.E1 * rep.E2 * rep.E3;
  rep.rank1_quality = rep.E_exact > 0 ? rep.E_rank1 / rep.E_exact : 1.0;
  return rep;
}

SpectralBeta spectral_beta(const ControlProblem& p) {
  p.validate();
  const double dt = p.t_f - p.t0;
  const std::size_t n = p.aug.n;
  const std::size_t nq = n + p.aug.q;

  Spectrum es;
  try {
    es = general_eig(p.aug.A_tilde);
  } catch (const NumericalError& err) {
    throw NumericalError(std::string("spectral_beta: ") + err.what());
  }

  const Vector x0 = stacked_state(p);
  CVector x0c(nq), rc(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    x0c[i] = x0[i];
    rc[i] = p.aug.r_tilde[i];
  }

  SpectralBeta out;
  out.eigenvalues = es.values;
  out.vectors = es.vectors;
  out.c = lu_solve(es.vectors, x0c);
  out.g = lu_solve(es.vectors, rc);
  out.J.resize(nq);

  CVector acc(n, 0.0);
  for (std::size_t k = 0; k < nq; ++k) {
    out.J[k] = j_coefficient(es.values[k], dt);
    const std::complex<double> weight =
        out.c[k] * std::exp(es.values[k] * dt) + out.g[k] * out.J[k];
    for (std::size_t i = 0; i < n; ++i) acc[i] += weight * es.vectors(i, k);
  }

  out.beta = Vector(n);
  double max_imag = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.beta[i] = acc[i].real();
    if (!p.y_f.empty()) out.beta[i] -= p.y_f[i];
    max_imag = std::max(max_imag, std::abs(acc[i].imag()));
  }
  const double scale = std::max(1.0, norm2(out.beta));
  if (max_imag > 1e-6 * scale)
    throw NumericalError("spectral_beta: eigen-expansion produced a non-real maneuver");
  return out;
}

LargeTfBeta beta_large_tf(const ControlProblem& p) {
  const SpectralBeta full = spectral_beta(p);
  const std::size_t n = p.aug.n;
  const std::size_t q = p.aug.q;

  CVector acc(n, 0.0);
  for (std::size_t k = 0; k < q; ++k) {
    const std::complex<double> weight =
        full.c[k] * std::exp(full.eigenvalues[k] * (p.t_f - p.t0)) + full.g[k] * full.J[k];
    for (std::size_t i = 0; i < n; ++i) acc[i] += weight * full.vectors(i, k);
  }

  LargeTfBeta out;
  out.beta_approx = Vector(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.beta_approx[i] = acc[i].real();

  const Vector exact = maneuver_beta(p);
  const double exact_norm = norm2(exact);
  const double gap = norm2(out.beta_approx - exact);
  out.rel_error = exact_norm > 0 ? gap / exact_norm : (gap > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  return out;
}

}  // namespace netdef
