#include "limax/transforms.hpp"

#include <cmath>
#include <numbers>

namespace limax {
namespace {

BodyMatrix multiply(const BodyMatrix& a, const BodyMatrix& b) {
  BodyMatrix c{};
  for (int i = 0; i < kBodies; ++i)
    for (int j = 0; j < kBodies; ++j)
      for (int k = 0; k < kBodies; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

BodyMatrix transpose(const BodyMatrix& a) {
  BodyMatrix t{};
  for (int i = 0; i < kBodies; ++i)
    for (int j = 0; j < kBodies; ++j) t[i][j] = a[j][i];
  return t;
}

BodyMatrix scale_row(BodyMatrix a, int row, double factor) {
  for (double& v : a[row]) v *= factor;
  return a;
}

// Orthonormal rows: the centroid direction and the three Jacobi directions.
const BodyMatrix& jacobi_basis() {
  static const BodyMatrix basis = [] {
    const double s2 = std::sqrt(2.0);
    const double s23 = std::sqrt(2.0 / 3.0);
    const double s3h = std::sqrt(3.0) / 2.0;
    return BodyMatrix{{
        {0.5, 0.5, 0.5, 0.5},
        {-1.0 / s2, 1.0 / s2, 0.0, 0.0},
        {-0.5 * s23, -0.5 * s23, s23, 0.0},
        {-s3h / 3.0, -s3h / 3.0, -s3h / 3.0, s3h},
    }};
  }();
  return basis;
}

// J = A r with J0 the centroid; PJ = A^{-T} p with PJ0 the total momentum.
const BodyMatrix& jacobi_position() {
  static const BodyMatrix m = scale_row(jacobi_basis(), 0, 0.5);
  return m;
}
const BodyMatrix& jacobi_momentum() {
  static const BodyMatrix m = scale_row(jacobi_basis(), 0, 2.0);
  return m;
}
const BodyMatrix& jacobi_position_inverse() {
  static const BodyMatrix m = transpose(jacobi_momentum());
  return m;
}
const BodyMatrix& jacobi_momentum_inverse() {
  static const BodyMatrix m = transpose(jacobi_position());
  return m;
}

// Q = R_q^T J on the relative block, with J = R_q Q the 5pi/6 rotation.
const BodyMatrix& jacobi_to_q() {
  static const BodyMatrix m = [] {
    const double c = std::cos(5.0 * std::numbers::pi / 6.0);
    const double s = std::sin(5.0 * std::numbers::pi / 6.0);
    const BodyMatrix rq{{
        {1.0, 0.0, 0.0, 0.0},
        {0.0, c, -s, 0.0},
        {0.0, s, c, 0.0},
        {0.0, 0.0, 0.0, 1.0},
    }};
    return transpose(rq);
  }();
  return m;
}

// U = R_u^T Q, with Q = R_u U the arctan(sqrt2) rotation mixing Q1 and Q3.
const BodyMatrix& q_to_u() {
  static const BodyMatrix m = [] {
    const double c = 1.0 / std::sqrt(3.0);       // cos(arctan sqrt2)
    const double s = std::sqrt(2.0 / 3.0);       // sin(arctan sqrt2)
    const BodyMatrix ru{{
        {1.0, 0.0, 0.0, 0.0},
        {0.0, c, 0.0, -s},
        {0.0, 0.0, 1.0, 0.0},
        {0.0, s, 0.0, c},
    }};
    return transpose(ru);
  }();
  return m;
}

const BodyMatrix& jacobi_to_u_matrix() {
  static const BodyMatrix m = multiply(q_to_u(), jacobi_to_q());
  return m;
}

const BodyMatrix& u_to_jacobi_matrix() {
  static const BodyMatrix m = transpose(jacobi_to_u_matrix());
  return m;
}

}  // namespace

BodyArray apply(const BodyMatrix& m, const BodyArray& v) {
  BodyArray out{};
  for (int i = 0; i < kBodies; ++i)
    for (int k = 0; k < kBodies; ++k) out[i] += m[i][k] * v[k];
  return out;
}

BodyArray apply_transpose(const BodyMatrix& m, const BodyArray& v) {
  BodyArray out{};
  for (int i = 0; i < kBodies; ++i)
    for (int k = 0; k < kBodies; ++k) out[i] += m[k][i] * v[k];
  return out;
}

JacobiState to_jacobi(const PhaseState& s) {
  return {apply(jacobi_position(), s.r), apply(jacobi_momentum(), s.p)};
}

PhaseState from_jacobi(const JacobiState& j) {
  return {apply(jacobi_position_inverse(), j.J), apply(jacobi_momentum_inverse(), j.PJ)};
}

std::array<Vec2, 3> relative_q(const JacobiState& j) {
  const BodyArray q = apply(jacobi_to_q(), j.J);
  return {q[1], q[2], q[3]};
}

UState jacobi_to_u(const JacobiState& j) {
  return {apply(jacobi_to_u_matrix(), j.J), apply(jacobi_to_u_matrix(), j.PJ)};
}

JacobiState u_to_jacobi(const UState& u) {
  return {apply(u_to_jacobi_matrix(), u.U), apply(u_to_jacobi_matrix(), u.PU)};
}

UState to_u(const PhaseState& s) { return jacobi_to_u(to_jacobi(s)); }

PhaseState from_u(const UState& u) { return from_jacobi(u_to_jacobi(u)); }

const BodyMatrix& u_position_matrix() {
  static const BodyMatrix m = multiply(jacobi_to_u_matrix(), jacobi_position());
  return m;
}

const BodyMatrix& u_momentum_matrix() {
  static const BodyMatrix m = multiply(jacobi_to_u_matrix(), jacobi_momentum());
  return m;
}

}  // namespace limax
