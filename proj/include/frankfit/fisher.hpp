#pragma once

#include <cstddef>

#include "frankfit/quadrature.hpp"
#include "frankfit/types.hpp"

namespace frankfit {

enum class FisherMethod { Quadrature, MonteCarlo };

inline const char* fisher_method_name(FisherMethod m) {
    return m == FisherMethod::Quadrature ? "quadrature" : "monte-carlo";
}

struct FisherResult {
    double theta = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double i_total = 0.0;  // i1 - i2
    FisherMethod method = FisherMethod::Quadrature;
    double mc_standard_error = 0.0;  // 0 for quadrature
};

// Information per observation at the independence limit (variance of the
// score there: Var[(1-2U1)(1-2U2)/2] = 1/36).
inline constexpr double kInformationAtIndependence = 1.0 / 36.0;

// 128 nodes per axis, absolute target 1e-8; checked against the half-order
// rule on every call.
QuadratureSpec fisher_default_quadrature();

// First information term 1/theta^2 + e^theta/(e^theta - 1)^2, evaluated in
// the decaying-exponential form so large |theta| cannot overflow.
double i1_term(double theta);

// Integrand ratio of the second information term: the mixed second-order
// bracket expression over the squared density bracket, exponent-factored
// like the copula kernels.
double j_ratio(const UnitPair& p, double theta);

// Second information term 2 E[J] by tensor-product quadrature over the unit
// square; throws QuadratureNotConverged if halving the order moves the
// result by more than q.abs_error_target.
double i2_quadrature(double theta, const QuadratureSpec& q = fisher_default_quadrature());

// Second information term by Monte Carlo over m draws; the returned
// i_total combines it with the exact i1_term.
FisherResult i2_monte_carlo(double theta, std::size_t m, const SeedSpec& seed);

// I(theta) = i1 - i2 via the quadrature path. |theta| < 1e-3 is served by
// averaging the two evaluations at theta = +/-1e-3 (the two terms diverge
// individually as 2/theta^2 while their difference stays finite).
FisherResult fisher_information(double theta,
                                const QuadratureSpec& q = fisher_default_quadrature());

// 1/I(theta), the large-sample variance scale n * MSE of the ML estimate.
double asymptotic_variance(double theta);

}  // namespace frankfit
