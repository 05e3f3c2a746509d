#include "limax/random.hpp"

namespace limax {

double symmetric_unit(std::mt19937_64& rng) {
  constexpr double kTwoPow53 = 9007199254740992.0;
  const double u = static_cast<double>(rng() >> 11) / kTwoPow53;  // [0, 1)
  return 2.0 * u - 1.0;
}

PhaseState random_unit_state(std::mt19937_64& rng) {
  PhaseState s;
  for (int k = 0; k < kBodies; ++k) {
    s.r[k] = {symmetric_unit(rng), symmetric_unit(rng)};
    s.p[k] = {symmetric_unit(rng), symmetric_unit(rng)};
  }
  return cm_project(s);
}

std::vector<PhaseState> random_unit_states(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<PhaseState> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(random_unit_state(rng));
  return out;
}

}  // namespace limax
