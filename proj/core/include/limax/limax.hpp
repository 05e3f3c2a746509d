#pragma once

#include "limax/analytic.hpp"
#include "limax/dynamics.hpp"
#include "limax/error.hpp"
#include "limax/hamiltonian.hpp"
#include "limax/integrals.hpp"
#include "limax/random.hpp"
#include "limax/scenarios.hpp"
#include "limax/state.hpp"
#include "limax/transforms.hpp"
#include "limax/vec2.hpp"
