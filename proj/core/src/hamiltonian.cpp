#include "limax/hamiltonian.hpp"

#include <cmath>

#include "limax/error.hpp"

namespace limax {

double kinetic_energy(const PhaseState& s, const SystemParams& params) {
  double sum = 0.0;
  for (const Vec2& p : s.p) sum += norm2(p);
  return sum / (2.0 * params.m());
}

double potential_energy(const PhaseState& s, const SystemParams& params) {
  double sum = 0.0;
  for (const PairCoupling& c : kPairCouplings) sum += c.c * norm2(s.r_rel(c.i, c.j));
  return 0.25 * params.m() * params.omega() * params.omega() * sum;
}

double total_hamiltonian(const PhaseState& s, const SystemParams& params) {
  if (!is_finite(s)) throw InvalidInput("total_hamiltonian: non-finite phase state");
  return kinetic_energy(s, params) + potential_energy(s, params);
}

double potential_jacobi(const JacobiState& j, const SystemParams& params) {
  const Vec2& j1 = j.J[1];
  const Vec2& j2 = j.J[2];
  const Vec2& j3 = j.J[3];
  const double v = 1.25 * norm2(j1) + 0.75 * norm2(j2) + norm2(j3) -
                   (std::sqrt(3.0) / 2.0) * dot(j1, j2) + std::sqrt(1.5) * dot(j1, j3) -
                   dot(j2, j3) / std::sqrt(2.0);
  return params.m() * params.omega() * params.omega() * v;
}

double hamiltonian_jacobi(const JacobiState& j, const SystemParams& params) {
  const double kinetic = (norm2(j.PJ[0]) + 4.0 * (norm2(j.PJ[1]) + norm2(j.PJ[2]) +
                                                   norm2(j.PJ[3]))) /
                         (8.0 * params.m());
  return kinetic + potential_jacobi(j, params);
}

double potential_q(const std::array<Vec2, 3>& q, const SystemParams& params) {
  const double v = 1.5 * norm2(q[0]) + 0.5 * norm2(q[1]) + norm2(q[2]) -
                   std::sqrt(2.0) * dot(q[0], q[2]);
  return params.m() * params.omega() * params.omega() * v;
}

double h_rel_u(const UState& u, const SystemParams& params) {
  const double m = params.m();
  const double w2 = params.omega() * params.omega();
  const double kinetic = (norm2(u.PU[1]) + norm2(u.PU[2]) + norm2(u.PU[3])) / (2.0 * m);
  const double potential =
      0.5 * m * (w2 * norm2(u.U[1]) + w2 * norm2(u.U[2]) + 4.0 * w2 * norm2(u.U[3]));
  return kinetic + potential;
}

}  // namespace limax
