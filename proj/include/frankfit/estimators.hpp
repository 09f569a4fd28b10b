#pragma once

#include <string>
#include <vector>

#include "frankfit/types.hpp"

namespace frankfit {

enum class PseudoMode { Raw, Adjusted };

enum class Method { ML, MM1, MM2 };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ML: return "ml";
        case Method::MM1: return "mm1";
        case Method::MM2: return "mm2";
    }
    return "?";
}

struct EstimateResult {
    double theta_hat = 0.0;
    Method method = Method::ML;
    int iterations = 0;
    double residual = 0.0;           // |H| or |moment equation| at theta_hat
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool independence_flag = false;  // theta_hat pinned to 0 (tau_hat ~ 0)
    bool multiplicity_warning = false;
};

// Raw measurements on arbitrary scales, before rank transformation.
struct RawBivariateData {
    std::vector<double> x1;
    std::vector<double> x2;
};

// Midranks of v (ties averaged), 1-based.
std::vector<double> midranks(const std::vector<double>& v);

// Rank transform to the unit square. Raw mode divides midranks by n and
// throws BoundaryValue whenever a coordinate lands on 1 (a unique maximum
// always does); adjusted mode uses (midrank + 0.5)/(n + 1), which keeps
// every coordinate strictly inside (0,1).
BivariateSample pseudo_observations(const RawBivariateData& data, PseudoMode mode);

// Sample Kendall tau: over the n(n-1)/2 index pairs k < l, each pair scores
// the product of per-coordinate comparison signs, where (a_k <= a_l) gives
// +1 and (a_k > a_l) gives -1; ties therefore contribute +1 factors.
// O(n log n) when both margins are tie-free, O(n^2) otherwise.
double kendall_tau_hat(const BivariateSample& s);

// Sample Spearman rho: 1 - 6 sum D_j^2 / (n(n^2-1)) on midranks.
double spearman_rho_hat(const BivariateSample& s);

// Normal-equation function H(theta): the mean per-pair score. Its root is
// the maximum-likelihood estimate.
double h_of_theta(const BivariateSample& s, double theta);

// lim_{theta->0} H(theta) = mean of (1-2u1)(1-2u2)/2; used to pick the
// search side before bracketing.
double h_at_zero_limit(const BivariateSample& s);

// Total log-likelihood (sum of log densities) at theta.
double log_likelihood(const BivariateSample& s, const AssociationParameter& theta);

// Maximum-likelihood estimate: side selection via h_at_zero_limit,
// geometric bracket expansion from |theta| = 1e-3, safeguarded
// inverse-quadratic refinement, then a coarse 0.5-step rescan for extra
// sign changes (multiplicity_warning when found; the log-likelihood
// breaks ties between roots).
EstimateResult mle_estimate(const BivariateSample& s, double tol = 1e-8);

// Moment estimates: invert the theta -> tau (or theta -> rho) map at the
// sample value. |tau_hat| < 1e-12 short-circuits to the independence
// result; values beyond the |theta| = 700 image raise MomentOutOfRange.
EstimateResult mme_tau_estimate(const BivariateSample& s, double tol = 1e-8);
EstimateResult mme_rho_estimate(const BivariateSample& s, double tol = 1e-8);

}  // namespace frankfit
