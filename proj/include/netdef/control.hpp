#pragma once

#include <complex>

#include "netdef/eigen.hpp"
#include "netdef/matrix.hpp"
#include "netdef/sysmodel.hpp"

namespace netdef {

// Fixed-endpoint minimum-energy defense problem: drive the network
// output to y_f at t_f starting from (x0, w0) at t0.
struct ControlProblem {
  AugmentedSystem aug;
  Vector x0;   // network initial state, length n
  Vector w0;   // attacker initial state, length q
  Vector y_f;  // target output, length n (zeros = return to origin)
  double t0 = 0.0;
  double t_f = 1.0;

  void validate() const;
};

ControlProblem make_control_problem(const NetworkSystem& sys, const AttackerModel& atk,
                                    Vector x0, Vector w0, double t0, double t_f);

// Output controllability Gramian W_p over [0, T]. Depends only on
// (A, B, T); attacker channels never enter.
Matrix output_gramian(const NetworkSystem& sys, double T);
Matrix output_gramian(const ControlProblem& p);

// Control maneuver: the output displacement the control must cancel.
Vector maneuver_beta(const ControlProblem& p);

// Minimum-energy input evaluated at a single time t in [t0, t_f].
Vector optimal_input(const ControlProblem& p, double t);

// Prepared evaluator when u*(t) is needed at many times.
struct OptimalControl {
  Matrix a_tilde_t;  // transposed augmented state matrix
  Matrix b_tilde_t;  // transposed augmented input matrix
  Vector ct_z;       // C' W_p^{-1} beta, padded to n+q
  double t_f = 0.0;

  Vector eval(double t) const;
};

OptimalControl make_optimal_control(const ControlProblem& p);

// E* = beta' W_p^{-1} beta.
double min_energy(const ControlProblem& p);

// Energy split E* ~ E1 E2 E3 plus the exact modal sum it approximates.
struct EnergyReport {
  Vector beta;
  double beta_norm2 = 0.0;  // E1
  Vector n_dir;             // unit vector along beta; empty when flagged
  double mu1 = 0.0;
  double mu2 = 0.0;  // NaN when the Gramian is 1x1
  Vector w1;
  double nTw1 = 0.0;  // signed overlap n' w_1
  double E1 = 0.0, E2 = 0.0, E3 = 0.0;
  double E_exact = 0.0;  // sum of modal terms (exact identity)
  double E_rank1 = 0.0;  // E1 * E2 * E3
  double rank1_quality = 0.0;
  Vector modal_terms;  // (n' w_i)^2 mu_i^{-1} beta^2 per mode, ascending mu
  bool zero_maneuver = false;
  bool low_confidence_rank1 = false;  // mu2 / mu1 < 10
};

EnergyReport energy_decomposition(const ControlProblem& p);

// Same decomposition reusing an already-computed W_p spectrum (sweeps
// share one spectrum across all attacker placements).
EnergyReport energy_decomposition(const ControlProblem& p, const SymmetricSpectrum& wp_spectrum);

// Maneuver via the eigen-expansion of A_tilde (Eq. of the spectral
// route), with the expansion coefficients exposed.
struct SpectralBeta {
  Vector beta;
  CVector eigenvalues;  // descending real part; attacker modes first
  CMatrix vectors;      // matching eigenvector columns
  CVector c;            // V^{-1} [x0; w0]
  CVector g;            // V^{-1} r_tilde
  CVector J;            // (e^{lambda dt} - 1) / lambda, dt at lambda = 0
};

SpectralBeta spectral_beta(const ControlProblem& p);

// Large-horizon approximation keeping only the q attacker modes.
struct LargeTfBeta {
  Vector beta_approx;
  double rel_error = 0.0;  // against the exact maneuver
};

LargeTfBeta beta_large_tf(const ControlProblem& p);

}  // namespace netdef
