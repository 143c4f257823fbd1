#include "netdef/simulate.hpp"

#include <cmath>

#include "netdef/errors.hpp"

namespace netdef {

namespace {

bool finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

Vector affine_deriv(const Matrix& a, const Vector& r, const Vector& x) {
  Vector d = matvec(a, x);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += r[i];
  return d;
}

// One RK4 step of dx/dt = A x + r + B u(t), where `input` may be null
// for open-loop integration.
template <typename InputFn>
Vector rk4_step(const Matrix& a, const Vector& r, const Matrix* b, const InputFn& input,
                const Vector& x, double t, double dt) {
  auto deriv = [&](const Vector& state, double at) {
    Vector d = affine_deriv(a, r, state);
    if (b != nullptr) {
      const Vector u = input(at);
      const Vector bu = matvec(*b, u);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += bu[i];
    }
    return d;
  };
  const Vector k1 = deriv(x, t);
  const Vector k2 = deriv(x + (dt / 2) * k1, t + dt / 2);
  const Vector k3 = deriv(x + (dt / 2) * k2, t + dt / 2);
  const Vector k4 = deriv(x + dt * k3, t + dt);
  Vector out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double network_norm(const Vector& state, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += state[i] * state[i];
  return std::sqrt(s);
}

// Growing-tail heuristic for the divergence flag on bounded horizons:
// the network-state norm at the end exceeds the midpoint norm by a
// clear factor.
void flag_growth(Trajectory& traj) {
  if (traj.diverged || traj.states.size() < 3) return;
  const double tail = network_norm(traj.states.back(), traj.n);
  const double mid = network_norm(traj.states[traj.states.size() / 2], traj.n);
  if (tail > 1.2 * mid && tail > 1e-9) traj.diverged = true;
}

}  // namespace

void Trajectory::validate() const {
  if (times.size() != states.size()) throw NumericalError("trajectory: times/states mismatch");
  if (!inputs.empty() && inputs.size() != times.size())
    throw NumericalError("trajectory: inputs length mismatch");
}

Trajectory integrate_open_loop(const AugmentedSystem& aug, const Vector& x0, const Vector& w0,
                               double T, double dt) {
  if (!(dt > 0) || !(T > 0)) throw UsageError("integrate_open_loop: need T > 0 and dt > 0");
  if (x0.size() != aug.n || w0.size() != aug.q)
    throw UsageError("integrate_open_loop: state sizes mismatch");

  const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
  Trajectory traj;
  traj.n = aug.n;
  traj.q = aug.q;
  traj.m = 0;

  Vector x(aug.n + aug.q);
  for (std::size_t i = 0; i < aug.n; ++i) x[i] = x0[i];
  for (std::size_t i = 0; i < aug.q; ++i) x[aug.n + i] = w0[i];

  traj.times.push_back(0.0);
  traj.states.push_back(x);
  auto no_input = [](double) { return Vector{}; };
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    x = rk4_step(aug.A_tilde, aug.r_tilde, nullptr, no_input, x, t, dt);
    if (!finite(x)) {
      traj.diverged = true;
      traj.blowup_time = t + dt;
      break;
    }
    traj.times.push_back(t + dt);
    traj.states.push_back(x);
  }
  flag_growth(traj);
  return traj;
}

ClosedLoopResult integrate_closed_loop(const ControlProblem& p, double dt) {
  if (!(dt > 0)) throw UsageError("integrate_closed_loop: dt must be positive");
  p.validate();
  const OptimalControl oc = make_optimal_control(p);
  const double span = p.t_f - p.t0;
  const std::size_t steps = static_cast<std::size_t>(std::llround(span / dt));

  ClosedLoopResult res;
  Trajectory& traj = res.traj;
  traj.n = p.aug.n;
  traj.q = p.aug.q;
  traj.m = p.aug.m;

  Vector x(p.aug.n + p.aug.q);
  for (std::size_t i = 0; i < p.aug.n; ++i) x[i] = p.x0[i];
  for (std::size_t i = 0; i < p.aug.q; ++i) x[p.aug.n + i] = p.w0[i];

  auto input = [&oc](double t) { return oc.eval(t); };
  traj.times.push_back(p.t0);
  traj.states.push_back(x);
  traj.inputs.push_back(input(p.t0));
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = p.t0 + static_cast<double>(k) * dt;
    x = rk4_step(p.aug.A_tilde, p.aug.r_tilde, &p.aug.B_tilde, input, x, t, dt);
    if (!finite(x)) {
      traj.diverged = true;
      traj.blowup_time = t + dt;
      break;
    }
    traj.times.push_back(t + dt);
    traj.states.push_back(x);
    traj.inputs.push_back(input(t + dt));
  }

  res.terminal_norm = network_norm(traj.states.back(), traj.n);
  res.realized_energy = traj.diverged ? std::numeric_limits<double>::quiet_NaN()
                                      : realized_energy(traj);
  return res;
}

double realized_energy(const Trajectory& traj) {
  traj.validate();
  if (traj.inputs.empty())
    throw UsageError("realized_energy: trajectory carries no inputs (open-loop run?)");
  const std::size_t samples = traj.inputs.size();
  if (samples < 2) return 0.0;
  const double dt = traj.times[1] - traj.times[0];

  Vector f(samples);
  for (std::size_t k = 0; k < samples; ++k) f[k] = dot(traj.inputs[k], traj.inputs[k]);

  // Composite Simpson; odd interval counts close with a 3/8 segment.
  std::size_t intervals = samples - 1;
  double total = 0.0;
  std::size_t upto = intervals;  // exclusive upper interval bound handled by Simpson
  if (intervals % 2 != 0) {
    if (intervals < 3) {  // single interval: trapezoid is all we have
      return 0.5 * dt * (f[0] + f[1]);
    }
    upto = intervals - 3;
    const std::size_t j = upto;
    total += 3.0 * dt / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
  }
  for (std::size_t k = 0; k + 2 <= upto; k += 2)
    total += dt / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  return total;
}

}  // namespace netdef
