#pragma once

#include <cstddef>

#include "netdef/matrix.hpp"

namespace netdef {

enum class AttackStrategy { Constant, Linear, Exponential, Other };

AttackStrategy classify_attack(double s, double r);

// Per-attacker growth rates s_i (1/time) and drive rates r_i
// (state/time): each attacker state obeys dw_i/dt = s_i w_i + r_i.
struct AttackerModel {
  Vector s;
  Vector r;

  std::size_t q() const { return s.size(); }
};

// Closed-form attacker states at time t from initial state w0.
Vector attacker_trajectory(const AttackerModel& atk, const Vector& w0, double t);

// The attacked network: state matrix A (n x n), attack input matrix H
// (n x q), defense input matrix B (n x m).
struct NetworkSystem {
  Matrix A;
  Matrix H;
  Matrix B;

  std::size_t n() const { return A.rows(); }
  std::size_t q() const { return H.cols(); }
  std::size_t m() const { return B.cols(); }
};

// Attacker-augmented system:
//   A_tilde = [[A, H], [0, S]],  B_tilde = [B; 0],
//   C = [I_n | 0],               r_tilde = [0; r].
struct AugmentedSystem {
  Matrix A_tilde;
  Matrix B_tilde;
  Matrix C;
  Vector r_tilde;
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t m = 0;
};

AugmentedSystem augment(const NetworkSystem& sys, const AttackerModel& atk);

}  // namespace netdef
