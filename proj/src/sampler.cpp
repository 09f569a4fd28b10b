#include "frankfit/sampler.hpp"

#include <cmath>

namespace frankfit {

namespace {

// ln(p + q e^z) for p, q in (0,1), any z; shifts the exponent out when it
// would overflow.
double log_mix(double p, double q, double z) {
    if (z <= 30.0) return std::log1p(q * std::expm1(z));
    return z + std::log(q + p * std::exp(-z));
}

}  // namespace

double invert_conditional(double u1, double v,
                          const AssociationParameter& theta) {
    if (theta.is_independence_limit()) return v;
    const double t = theta.value();
    // Closed-form inverse of the conditional cdf:
    //   u2 = u1 - (1/t) [ ln((1-v) + v e^{-t(1-u1)}) - ln(v + (1-v) e^{-t u1}) ]
    const double term1 = log_mix(1.0 - v, v, -t * (1.0 - u1));
    const double term2 = log_mix(v, 1.0 - v, -t * u1);
    double u2 = u1 - (term1 - term2) / t;
    // Guard against the result rounding onto the boundary at extreme theta.
    if (u2 <= 0.0) u2 = std::nextafter(0.0, 1.0);
    if (u2 >= 1.0) u2 = std::nextafter(1.0, 0.0);
    return u2;
}

UnitPair sample_pair(const AssociationParameter& theta, CounterRng& rng) {
    const double u1 = rng.uniform01_open();
    const double v = rng.uniform01_open();
    return {u1, invert_conditional(u1, v, theta)};
}

BivariateSample sample_n(const AssociationParameter& theta, std::size_t n,
                         SeedSpec seed) {
    CounterRng rng(seed);
    std::vector<UnitPair> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pairs.push_back(sample_pair(theta, rng));
    return BivariateSample(std::move(pairs));
}

}  // namespace frankfit
