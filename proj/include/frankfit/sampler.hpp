#pragma once

#include "frankfit/rng.hpp"
#include "frankfit/types.hpp"

namespace frankfit {

// u2 with conditional_cdf(u2 | u1) = v, the inversion kernel behind
// sample_pair. Exposed so the inversion can be exercised with chosen (u1, v).
double invert_conditional(double u1, double v, const AssociationParameter& theta);

// One draw: u1, v uniform (in that order), u2 by conditional inversion; at
// the independence limit the pair is (u1, v) itself.
UnitPair sample_pair(const AssociationParameter& theta, CounterRng& rng);

// n draws from the stream selected by seed; deterministic given seed.
BivariateSample sample_n(const AssociationParameter& theta, std::size_t n,
                         SeedSpec seed);

}  // namespace frankfit
