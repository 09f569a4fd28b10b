#pragma once

#include "frankfit/types.hpp"

namespace frankfit {

// cdf C(u1,u2|theta); accepts boundary coordinates in [0,1].
double frank_cdf(double u1, double u2, const AssociationParameter& theta);

// Joint density on the open unit square.
double frank_pdf(const UnitPair& p, const AssociationParameter& theta);

// ln of the density, evaluated without forming the density itself.
double frank_log_pdf(const UnitPair& p, const AssociationParameter& theta);

// d/dtheta of the log-density for one observation.
double score_single(const UnitPair& p, const AssociationParameter& theta);

// P(U2 <= u2 | U1 = u1) under the copula.
double conditional_cdf(double u2, double u1, const AssociationParameter& theta);

namespace detail {

// ln|bracket| and sign of
//   bracket(t) = e^{-t u1} + e^{-t u2} - e^{-t} - e^{-t(u1+u2)},
// the squared quantity in the density denominator. Evaluated with the
// largest exponent factored out so it stays finite over the whole theta box.
// sign(bracket) = sign(t).
struct LogBracket {
    double log_abs;
    double sign;
    double max_exp;
};
LogBracket log_bracket(double u1, double u2, double t);

// A1/A2 of the score for one observation, same exponent factoring.
double score_ratio(double u1, double u2, double t);

// Coefficients of ln c = s1*t + s2*t^2 + O(t^3) around t = 0.
inline double taylor_s1(double u1, double u2) {
    return 0.5 * (1.0 - 2.0 * u1) * (1.0 - 2.0 * u2);
}
inline double taylor_s2(double u1, double u2) {
    return u1 * u2 * (1.0 - u1) * (1.0 - u2) - 1.0 / 24.0;
}

}  // namespace detail

}  // namespace frankfit
