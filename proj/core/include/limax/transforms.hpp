#pragma once

#include <array>

#include "limax/state.hpp"

namespace limax {

/// Linear map acting on the body index; applied to x and y components alike,
/// so a BodyMatrix M stands for the 8x8 block M (x) I2.
using BodyMatrix = std::array<std::array<double, kBodies>, kBodies>;

BodyArray apply(const BodyMatrix& m, const BodyArray& v);
BodyArray apply_transpose(const BodyMatrix& m, const BodyArray& v);

/// Jacobi-like coordinates: J0 is the centroid, J1..J3 the orthonormal
/// relative vectors. PJ are the conjugate momenta (transpose-inverse map), so
/// PJ0 is the total momentum and the kinetic energy reads
/// (PJ0^2 + 4 PJ1^2 + 4 PJ2^2 + 4 PJ3^2) / (8m).
struct JacobiState {
  BodyArray J{};
  BodyArray PJ{};
};

/// Separated coordinates. U0 = J0 (centroid) with PU0 = total momentum;
/// U1 = -r24/sqrt2, U2 = r13/sqrt2, U3 = (r24+ - r13+)/2 with the same
/// coefficients on the momenta. In the CM frame U3 = r24+ = -r13+.
struct UState {
  BodyArray U{};
  BodyArray PU{};
};

JacobiState to_jacobi(const PhaseState& s);
PhaseState from_jacobi(const JacobiState& j);

// Q1..Q3: J1..J3 after the 5pi/6 rotation that isolates Q2.
std::array<Vec2, 3> relative_q(const JacobiState& j);

// Rotation by 5pi/6 about J3 followed by arctan(sqrt2) about Q2.
UState jacobi_to_u(const JacobiState& j);
JacobiState u_to_jacobi(const UState& u);

UState to_u(const PhaseState& s);
PhaseState from_u(const UState& u);

// Matrices of the composite maps r -> U and p -> PU.
const BodyMatrix& u_position_matrix();
const BodyMatrix& u_momentum_matrix();

}  // namespace limax
