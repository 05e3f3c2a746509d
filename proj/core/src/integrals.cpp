#include "limax/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limax/error.hpp"
#include "limax/hamiltonian.hpp"

namespace limax {
namespace {

double& component(Vec2& v, int c) { return c == 0 ? v.x : v.y; }

// 4D oscillator index k in 1..4 -> (U slot, component).
int u_slot(int k) { return 1 + (k - 1) / 2; }
int u_component(int k) { return (k - 1) % 2; }

void add_q(UGradient& g, int k, double v) { component(g.d_u[u_slot(k)], u_component(k)) += v; }
void add_p(UGradient& g, int k, double v) { component(g.d_pu[u_slot(k)], u_component(k)) += v; }

bool valid_body(int i) { return i >= 1 && i <= kBodies; }

// Coordinate k in 0..15 of a Cartesian phase point: body k/4, slots x, y, px, py.
double& coordinate(PhaseState& s, int k) {
  const int body = k / 4;
  switch (k % 4) {
    case 0: return s.r[body].x;
    case 1: return s.r[body].y;
    case 2: return s.p[body].x;
    default: return s.p[body].y;
  }
}

void set_partial(PhaseGradient& g, int k, double v) {
  const int body = k / 4;
  switch (k % 4) {
    case 0: g.d_r[body].x = v; break;
    case 1: g.d_r[body].y = v; break;
    case 2: g.d_p[body].x = v; break;
    default: g.d_p[body].y = v; break;
  }
}

double bracket_from(const PhaseGradient& f, const PhaseGradient& g) {
  double sum = 0.0;
  for (int k = 0; k < kBodies; ++k) {
    sum += dot(f.d_r[k], g.d_p[k]) - dot(f.d_p[k], g.d_r[k]);
  }
  return sum;
}

}  // namespace

IntegralName IntegralName::l(int i, int j) {
  if (!(valid_body(i) && valid_body(j) && i < j)) {
    throw InvalidInput("L_ij requires 1 <= i < j <= 4");
  }
  return IntegralName(IntegralKind::kL, i, j);
}

IntegralName IntegralName::fradkin(int i, int j) {
  if (!(valid_body(i) && valid_body(j))) throw InvalidInput("FRADKIN(i,j) requires 1 <= i, j <= 4");
  return IntegralName(IntegralKind::kFradkin, std::min(i, j), std::max(i, j));
}

IntegralName IntegralName::parse(std::string_view label) {
  if (label == "H_REL") return h_rel();
  if (label == "H_2D") return h_2d();
  if (label == "H4D") return h_4d();
  if (label == "L_U3") return l_u3();
  if (label == "H3X") return h3x();
  if (label == "HOLT") return holt();
  if (label == "IGEN") return igen();
  if (label == "DOT_R") return dot_r();
  if (label == "DOT_P") return dot_p();
  auto digit = [](char c) { return c >= '1' && c <= '4' ? c - '0' : -1; };
  if (label.size() == 3 && (label[0] == 'L' || label[0] == 'I')) {
    const int i = digit(label[1]);
    const int j = digit(label[2]);
    if (i > 0 && j > 0) {
      if (label[0] == 'I') return fradkin(i, j);
      if (i < j) return l(i, j);
    }
  }
  if (label.size() == 12 && label.substr(0, 8) == "FRADKIN(" && label[9] == ',' &&
      label[11] == ')') {
    const int i = digit(label[8]);
    const int j = digit(label[10]);
    if (i > 0 && j > 0) return fradkin(i, j);
  }
  throw InvalidInput("unknown integral name '" + std::string(label) + "'");
}

std::string IntegralName::label() const {
  switch (kind_) {
    case IntegralKind::kHRel: return "H_REL";
    case IntegralKind::kH2D: return "H_2D";
    case IntegralKind::kH4D: return "H4D";
    case IntegralKind::kLU3: return "L_U3";
    case IntegralKind::kH3X: return "H3X";
    case IntegralKind::kHolt: return "HOLT";
    case IntegralKind::kL: return "L" + std::to_string(i_) + std::to_string(j_);
    case IntegralKind::kFradkin:
      return "FRADKIN(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
    case IntegralKind::kIGen: return "IGEN";
    case IntegralKind::kDotR: return "DOT_R";
    case IntegralKind::kDotP: return "DOT_P";
  }
  return "?";
}

const std::array<IntegralName, 11>& global_integrals() {
  static const std::array<IntegralName, 11> names{
      IntegralName::h_2d(),         IntegralName::l_u3(),         IntegralName::h3x(),
      IntegralName::holt(),         IntegralName::h_4d(),         IntegralName::l(1, 2),
      IntegralName::l(1, 3),        IntegralName::l(1, 4),        IntegralName::fradkin(1, 1),
      IntegralName::fradkin(2, 2),  IntegralName::fradkin(3, 3),
  };
  return names;
}

PhasePoint4D PhasePoint4D::from_u(const UState& u) {
  return {{u.U[1].x, u.U[1].y, u.U[2].x, u.U[2].y},
          {u.PU[1].x, u.PU[1].y, u.PU[2].x, u.PU[2].y}};
}

double eval_integral_u(const IntegralName& name, const UState& u, const SystemParams& params) {
  const double m = params.m();
  const double w = params.omega();
  const double mw = params.m_omega();
  const Vec2& u1 = u.U[1];
  const Vec2& u2 = u.U[2];
  const Vec2& u3 = u.U[3];
  const Vec2& p1 = u.PU[1];
  const Vec2& p2 = u.PU[2];
  const Vec2& p3 = u.PU[3];
  const double w3 = 2.0 * w;

  switch (name.kind()) {
    case IntegralKind::kHRel:
      return h_rel_u(u, params);
    case IntegralKind::kH2D:
      return norm2(p3) / (2.0 * m) + 0.5 * m * w3 * w3 * norm2(u3);
    case IntegralKind::kH4D:
      return (norm2(p1) + norm2(p2)) / (2.0 * m) + 0.5 * m * w * w * (norm2(u1) + norm2(u2));
    case IntegralKind::kLU3:
      return cross(u3, p3);
    case IntegralKind::kH3X:
      return p3.x * p3.x / (2.0 * m) + 0.5 * m * w3 * w3 * u3.x * u3.x;
    case IntegralKind::kHolt:
      return p1.x * p1.x * p3.y + 4.0 * mw * mw * u1.x * u3.y * p1.x -
             mw * mw * u1.x * u1.x * p3.y;
    case IntegralKind::kL: {
      const PhasePoint4D x = PhasePoint4D::from_u(u);
      const int i = name.i() - 1;
      const int j = name.j() - 1;
      return x.q[i] * x.p[j] - x.q[j] * x.p[i];
    }
    case IntegralKind::kFradkin: {
      const PhasePoint4D x = PhasePoint4D::from_u(u);
      const int i = name.i() - 1;
      const int j = name.j() - 1;
      return x.p[i] * x.p[j] / m + m * w * w * x.q[i] * x.q[j];
    }
    // r13 = sqrt2 U2 and r24 = -sqrt2 U1 (same on the momenta).
    case IntegralKind::kIGen:
      return -2.0 * (dot(u1, u2) + dot(p1, p2) / (mw * mw));
    case IntegralKind::kDotR:
      return -2.0 * dot(u1, u2);
    case IntegralKind::kDotP:
      return -2.0 * dot(p1, p2);
  }
  throw InvalidInput("unknown integral kind");
}

double eval_integral(const IntegralName& name, const PhaseState& s, const SystemParams& params) {
  return eval_integral_u(name, to_u(s), params);
}

UGradient gradient_u(const IntegralName& name, const UState& u, const SystemParams& params) {
  const double m = params.m();
  const double w = params.omega();
  const double mw = params.m_omega();
  const double w3 = 2.0 * w;
  UGradient g;

  auto oscillator = [&](int slot, double freq) {
    g.d_u[slot] = m * freq * freq * u.U[slot];
    g.d_pu[slot] = u.PU[slot] / m;
  };

  switch (name.kind()) {
    case IntegralKind::kHRel:
      oscillator(1, w);
      oscillator(2, w);
      oscillator(3, w3);
      break;
    case IntegralKind::kH2D:
      oscillator(3, w3);
      break;
    case IntegralKind::kH4D:
      oscillator(1, w);
      oscillator(2, w);
      break;
    case IntegralKind::kLU3:
      g.d_u[3] = {u.PU[3].y, -u.PU[3].x};
      g.d_pu[3] = {-u.U[3].y, u.U[3].x};
      break;
    case IntegralKind::kH3X:
      g.d_u[3] = {m * w3 * w3 * u.U[3].x, 0.0};
      g.d_pu[3] = {u.PU[3].x / m, 0.0};
      break;
    case IntegralKind::kHolt: {
      const double k = mw * mw;
      const double u1x = u.U[1].x;
      const double u3y = u.U[3].y;
      const double p1x = u.PU[1].x;
      const double p3y = u.PU[3].y;
      g.d_u[1].x = 4.0 * k * u3y * p1x - 2.0 * k * u1x * p3y;
      g.d_u[3].y = 4.0 * k * u1x * p1x;
      g.d_pu[1].x = 2.0 * p1x * p3y + 4.0 * k * u1x * u3y;
      g.d_pu[3].y = p1x * p1x - k * u1x * u1x;
      break;
    }
    case IntegralKind::kL: {
      const PhasePoint4D x = PhasePoint4D::from_u(u);
      const int i = name.i();
      const int j = name.j();
      add_q(g, i, x.p[j - 1]);
      add_q(g, j, -x.p[i - 1]);
      add_p(g, j, x.q[i - 1]);
      add_p(g, i, -x.q[j - 1]);
      break;
    }
    case IntegralKind::kFradkin: {
      const PhasePoint4D x = PhasePoint4D::from_u(u);
      const int i = name.i();
      const int j = name.j();
      add_q(g, i, m * w * w * x.q[j - 1]);
      add_q(g, j, m * w * w * x.q[i - 1]);
      add_p(g, i, x.p[j - 1] / m);
      add_p(g, j, x.p[i - 1] / m);
      break;
    }
    case IntegralKind::kIGen:
      g.d_u[1] = -2.0 * u.U[2];
      g.d_u[2] = -2.0 * u.U[1];
      g.d_pu[1] = (-2.0 / (mw * mw)) * u.PU[2];
      g.d_pu[2] = (-2.0 / (mw * mw)) * u.PU[1];
      break;
    case IntegralKind::kDotR:
      g.d_u[1] = -2.0 * u.U[2];
      g.d_u[2] = -2.0 * u.U[1];
      break;
    case IntegralKind::kDotP:
      g.d_pu[1] = -2.0 * u.PU[2];
      g.d_pu[2] = -2.0 * u.PU[1];
      break;
  }
  return g;
}

PhaseGradient gradient(const IntegralName& name, const PhaseState& s, const SystemParams& params) {
  const UGradient g = gradient_u(name, to_u(s), params);
  return {apply_transpose(u_position_matrix(), g.d_u),
          apply_transpose(u_momentum_matrix(), g.d_pu)};
}

PhaseGradient gradient_fd(const IntegralName& name, const PhaseState& s,
                          const SystemParams& params, double h) {
  if (!(std::isfinite(h) && h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  auto central = [&](int k, double step) {
    PhaseState plus = s;
    PhaseState minus = s;
    coordinate(plus, k) += step;
    coordinate(minus, k) -= step;
    return (eval_integral(name, plus, params) - eval_integral(name, minus, params)) / (2.0 * step);
  };
  PhaseGradient g;
  for (int k = 0; k < 4 * kBodies; ++k) {
    const double coarse = central(k, h);
    const double fine = central(k, 0.5 * h);
    set_partial(g, k, (4.0 * fine - coarse) / 3.0);
  }
  return g;
}

double poisson_bracket(const IntegralName& f, const IntegralName& g, const PhaseState& s,
                       const SystemParams& params, double h) {
  if (!(std::isfinite(h) && h > 0.0)) throw InvalidInput("poisson_bracket: h must be positive");
  return bracket_from(gradient_fd(f, s, params, h), gradient_fd(g, s, params, h));
}

double poisson_bracket_exact(const IntegralName& f, const IntegralName& g, const PhaseState& s,
                             const SystemParams& params) {
  return bracket_from(gradient(f, s, params), gradient(g, s, params));
}

double bracket_L_H3x(const PhaseState& s, const SystemParams& params) {
  const UState u = to_u(s);
  const double w3 = 2.0 * params.omega();
  const Vec2& x = u.U[3];
  const Vec2& p = u.PU[3];
  return p.x * p.y / params.m() + params.m() * w3 * w3 * x.x * x.y;
}

IntegralReport integral_drift(const IntegralName& name, std::span<const TimedState> trajectory,
                              const SystemParams& params) {
  if (trajectory.empty()) throw InvalidInput("integral_drift: empty trajectory");
  IntegralReport report{name, {}, 0.0};
  report.samples.reserve(trajectory.size());
  for (const TimedState& ts : trajectory) {
    report.samples.push_back({ts.t, eval_integral(name, ts.state, params)});
  }
  const double v0 = report.samples.front().value;
  for (const IntegralSample& sample : report.samples) {
    report.max_drift = std::max(report.max_drift, std::abs(sample.value - v0));
  }
  return report;
}

}  // namespace limax
