#pragma once

#include "netdef/control.hpp"
#include "netdef/matrix.hpp"
#include "netdef/sysmodel.hpp"

namespace netdef {

// Sampled trajectory of the augmented system. states[k] stacks the
// network portion (n entries) and attacker portion (q entries) at
// times[k]; inputs are present for closed-loop runs only.
struct Trajectory {
  Vector times;
  std::vector<Vector> states;
  std::vector<Vector> inputs;
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t m = 0;
  bool diverged = false;     // non-finite state or growing tail
  double blowup_time = 0.0;  // first non-finite sample time, when any

  void validate() const;
};

// Fixed-step RK4 on dx = A_tilde x + r_tilde with u = 0 over [0, T].
// Stops early at the first non-finite state and flags it.
Trajectory integrate_open_loop(const AugmentedSystem& aug, const Vector& x0, const Vector& w0,
                               double T, double dt);

struct ClosedLoopResult {
  Trajectory traj;
  double terminal_norm = 0.0;    // network-state norm at t_f
  double realized_energy = 0.0;  // quadrature of u'u along the run
};

// Fixed-step RK4 on dx = A_tilde x + r_tilde + B_tilde u*(t), with the
// optimal input evaluated analytically at every stage time.
ClosedLoopResult integrate_closed_loop(const ControlProblem& p, double dt);

// Composite quadrature of u'(t) u(t) over a closed-loop trajectory.
double realized_energy(const Trajectory& traj);

}  // namespace netdef
