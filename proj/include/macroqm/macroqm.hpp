#pragma once

#include "macroqm/asymptotics.hpp"
#include "macroqm/averaging.hpp"
#include "macroqm/errors.hpp"
#include "macroqm/fourier.hpp"
#include "macroqm/observables.hpp"
#include "macroqm/oscillator.hpp"
#include "macroqm/quadrature.hpp"
#include "macroqm/specfun.hpp"

namespace macroqm {

inline constexpr const char* version = "0.1.0";

} // namespace macroqm
