#pragma once

#include <array>

#include "limax/state.hpp"
#include "limax/transforms.hpp"

namespace limax {

/// One term c * (m omega^2 / 4) * |r_i - r_j|^2 of the pair potential.
struct PairCoupling {
  int i;
  int j;
  double c;
};

// Adjacent pairs attract with weight 2, alternating pairs (13, 24) repel
// with weight 1.
inline constexpr std::array<PairCoupling, 6> kPairCouplings{{
    {1, 2, 2.0}, {2, 3, 2.0}, {3, 4, 2.0}, {1, 4, 2.0}, {1, 3, -1.0}, {2, 4, -1.0},
}};

double kinetic_energy(const PhaseState& s, const SystemParams& params);
double potential_energy(const PhaseState& s, const SystemParams& params);

// Throws InvalidInput on non-finite input.
double total_hamiltonian(const PhaseState& s, const SystemParams& params);

double potential_jacobi(const JacobiState& j, const SystemParams& params);
double hamiltonian_jacobi(const JacobiState& j, const SystemParams& params);

// Potential of the relative motion in the rotated Q coordinates.
double potential_q(const std::array<Vec2, 3>& q, const SystemParams& params);

/// Three decoupled isotropic oscillators with frequencies (omega, omega,
/// 2 omega). U0 and PU0 are ignored.
double h_rel_u(const UState& u, const SystemParams& params);

}  // namespace limax
