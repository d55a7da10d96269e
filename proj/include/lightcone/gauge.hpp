#pragma once

#include "lightcone/gauge_function.hpp"
#include "lightcone/minkowski.hpp"
#include "lightcone/potential.hpp"

namespace lightcone {

/// Gauge transformation A -> A + grad Lambda. The result evaluates the base
/// potential plus the gradient of the generating function; the fields it
/// produces are unchanged, which is exactly why field agreement alone cannot
/// certify a gauge as physical.
PotentialField apply_gauge(const PotentialField& a, const GaugeFunction& lambda);

/// The generating function Lambda(x) = -(A(x) . x) of a plane-wave-family
/// potential. Applying it to its own base yields the nonphysical companion
/// potential -k * (x . dA/dphi).
GaugeFunction lambda_from_potential(const PotentialField& a);

}  // namespace lightcone
