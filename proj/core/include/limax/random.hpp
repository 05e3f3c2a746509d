#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "limax/state.hpp"

namespace limax {

// Uniform on [-1, 1) built from the top 53 bits of one mt19937_64 draw, so the
// sequence is identical on every platform (unlike std::uniform_real_distribution).
double symmetric_unit(std::mt19937_64& rng);

// Every component uniform on [-1, 1], then projected to the CM frame.
PhaseState random_unit_state(std::mt19937_64& rng);

std::vector<PhaseState> random_unit_states(std::uint64_t seed, std::size_t count);

}  // namespace limax
