#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "limax/state.hpp"
#include "limax/transforms.hpp"

namespace limax {

enum class IntegralKind {
  kHRel,     // full relative Hamiltonian
  kH2D,      // U3 oscillator energy (frequency 2 omega)
  kH4D,      // U1 (+) U2 isotropic oscillator energy
  kLU3,      // angular momentum of the U3 oscillator
  kH3X,      // x-direction energy of the U3 oscillator
  kHolt,     // cubic integral from the 1:2 frequency resonance
  kL,        // L_ij of the 4D oscillator
  kFradkin,  // I_ij of the 4D oscillator
  kIGen,     // r13.r24 + p13.p24 / (m omega)^2
  kDotR,     // r13.r24
  kDotP,     // p13.p24
};

/// Identifies one conserved or particular quantity. Indices are used only by
/// L (1 <= i < j <= 4) and FRADKIN (1 <= i <= j <= 4).
class IntegralName {
 public:
  static IntegralName h_rel() { return IntegralName(IntegralKind::kHRel); }
  static IntegralName h_2d() { return IntegralName(IntegralKind::kH2D); }
  static IntegralName h_4d() { return IntegralName(IntegralKind::kH4D); }
  static IntegralName l_u3() { return IntegralName(IntegralKind::kLU3); }
  static IntegralName h3x() { return IntegralName(IntegralKind::kH3X); }
  static IntegralName holt() { return IntegralName(IntegralKind::kHolt); }
  static IntegralName igen() { return IntegralName(IntegralKind::kIGen); }
  static IntegralName dot_r() { return IntegralName(IntegralKind::kDotR); }
  static IntegralName dot_p() { return IntegralName(IntegralKind::kDotP); }
  // Throws InvalidInput unless 1 <= i < j <= 4.
  static IntegralName l(int i, int j);
  // Throws InvalidInput unless 1 <= i, j <= 4; the pair is stored ordered.
  static IntegralName fradkin(int i, int j);

  // Accepts every label produced by label(), plus I<i><j> for FRADKIN(i,j).
  // Throws InvalidInput on an unknown name.
  static IntegralName parse(std::string_view label);

  IntegralKind kind() const { return kind_; }
  int i() const { return i_; }
  int j() const { return j_; }

  // H_REL, H_2D, H4D, L_U3, H3X, HOLT, L12, FRADKIN(1,1), IGEN, DOT_R, DOT_P
  std::string label() const;

  friend bool operator==(const IntegralName&, const IntegralName&) = default;

 private:
  explicit IntegralName(IntegralKind kind, int i = 0, int j = 0)
      : kind_(kind), i_(i), j_(j) {}

  IntegralKind kind_;
  int i_;
  int j_;
};

// H_2D, L_U3, H3X, HOLT, H4D, L12, L13, L14, I11, I22, I33.
const std::array<IntegralName, 11>& global_integrals();

/// U1 (+) U2 stacked into the 4D oscillator phase point.
struct PhasePoint4D {
  std::array<double, 4> q{};
  std::array<double, 4> p{};

  static PhasePoint4D from_u(const UState& u);
};

double eval_integral_u(const IntegralName& name, const UState& u, const SystemParams& params);
double eval_integral(const IntegralName& name, const PhaseState& s, const SystemParams& params);

/// Partial derivatives with respect to the Cartesian phase coordinates.
struct PhaseGradient {
  BodyArray d_r{};
  BodyArray d_p{};
};

struct UGradient {
  BodyArray d_u{};
  BodyArray d_pu{};
};

// Closed-form gradient in U coordinates.
UGradient gradient_u(const IntegralName& name, const UState& u, const SystemParams& params);

// Closed-form gradient pulled back to Cartesian coordinates by the chain rule.
PhaseGradient gradient(const IntegralName& name, const PhaseState& s, const SystemParams& params);

// Central differences at h and h/2 with one Richardson step. Exact up to
// rounding for polynomials of degree <= 4 in each coordinate.
PhaseGradient gradient_fd(const IntegralName& name, const PhaseState& s,
                          const SystemParams& params, double h);

inline constexpr double kDefaultBracketStep = 1e-4;

/// {f, g} = sum_k (df/dq_k dg/dp_k - df/dp_k dg/dq_k) over the 16 Cartesian
/// coordinates, from finite-difference gradients. Throws InvalidInput if h <= 0.
double poisson_bracket(const IntegralName& f, const IntegralName& g, const PhaseState& s,
                       const SystemParams& params, double h = kDefaultBracketStep);

// Same bracket from the closed-form gradients.
double poisson_bracket_exact(const IntegralName& f, const IntegralName& g, const PhaseState& s,
                             const SystemParams& params);

// {L, H3x} = Px Py / m + m (2 omega)^2 ux uy on the U3 oscillator.
double bracket_L_H3x(const PhaseState& s, const SystemParams& params);

struct IntegralSample {
  double t;
  double value;
};

struct IntegralReport {
  IntegralName name;
  std::vector<IntegralSample> samples;
  double max_drift;  // max |value(t) - value(first sample)|
};

// Throws InvalidInput on an empty trajectory.
IntegralReport integral_drift(const IntegralName& name, std::span<const TimedState> trajectory,
                              const SystemParams& params);

}  // namespace limax
