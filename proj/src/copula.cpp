#include "frankfit/copula.hpp"

#include <algorithm>
#include <cmath>

namespace frankfit {

namespace detail {

LogBracket log_bracket(double u1, double u2, double t) {
    if (!(std::fabs(t) <= kThetaMax))
        throw OverflowGuard("bracket evaluation outside the theta box");
    const double s = u1 + u2;
    const double e1 = -t * u1, e2 = -t * u2, e3 = -t, e4 = -t * s;
    const double m = std::max(std::max(e1, e2), std::max(e3, e4));
    // The shifted exponentials enter as +,+,-,-, so their constant parts
    // cancel exactly; expm1 keeps that cancellation out of floating point
    // and the small-|t| error drops from eps/|t| to eps.
    const double r = std::expm1(e1 - m) + std::expm1(e2 - m) -
                     std::expm1(e3 - m) - std::expm1(e4 - m);
    return {m + std::log(std::fabs(r)), r >= 0.0 ? 1.0 : -1.0, m};
}

double score_ratio(double u1, double u2, double t) {
    const double s = u1 + u2;
    const double e1 = -t * u1, e2 = -t * u2, e3 = -t, e4 = -t * s;
    const double m = std::max(std::max(e1, e2), std::max(e3, e4));
    const double a1 = std::expm1(e1 - m), a2 = std::expm1(e2 - m);
    const double a3 = std::expm1(e3 - m), a4 = std::expm1(e4 - m);
    // Same +,+,-,- cancellation as in log_bracket: the denominator is the
    // bracket itself, and the expm1 form keeps it accurate down to the
    // Taylor switch. The numerator is well conditioned either way.
    const double num =
        u1 * (1.0 + a1) + u2 * (1.0 + a2) - s * (1.0 + a4) - (1.0 + a3);
    return num / (a1 + a2 - a3 - a4);
}

}  // namespace detail

double frank_cdf(double u1, double u2, const AssociationParameter& theta) {
    if (!(u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0))
        throw BoundaryValue("cdf arguments must lie in [0,1]");
    if (u1 == 0.0 || u2 == 0.0) return 0.0;
    if (u1 == 1.0) return u2;
    if (u2 == 1.0) return u1;

    if (theta.is_independence_limit()) return u1 * u2;
    const double t = theta.value();
    if (std::fabs(t) < kSmallTheta)
        return u1 * u2 * (1.0 + 0.5 * t * (1.0 - u1) * (1.0 - u2));

    if (std::fabs(t) <= 5.0) {
        // C = -(1/t) ln(1 + g1 g2 / g), g_x = e^{-t x} - 1; the ratio is
        // cancellation-free on this range. (For larger |t| the 1 + q sum
        // cancels near the upper corner, so switch to the factored form.)
        const double q =
            std::expm1(-t * u1) * std::expm1(-t * u2) / std::expm1(-t);
        return std::clamp(-std::log1p(q) / t, 0.0, 1.0);
    }
    // Large |t|: e^{-t C} = bracket / (1 - e^{-t}), both factors sharing the
    // sign of t, so work with logs of absolute values.
    const auto lb = detail::log_bracket(u1, u2, t);
    const double log_g = std::log(std::fabs(std::expm1(-t)));
    return std::clamp(-(lb.log_abs - log_g) / t, 0.0, 1.0);
}

double frank_log_pdf(const UnitPair& p, const AssociationParameter& theta) {
    if (theta.is_independence_limit()) return 0.0;
    const double t = theta.value();
    if (std::fabs(t) < kSmallTheta) {
        const double s1 = detail::taylor_s1(p.u1, p.u2);
        const double s2 = detail::taylor_s2(p.u1, p.u2);
        return t * (s1 + t * s2);
    }
    // ln|t| + ln|1-e^{-t}| is ln of the positive product t(1-e^{-t}).
    const auto lb = detail::log_bracket(p.u1, p.u2, t);
    return std::log(std::fabs(t)) + std::log(std::fabs(std::expm1(-t))) -
           t * (p.u1 + p.u2) - 2.0 * lb.log_abs;
}

double frank_pdf(const UnitPair& p, const AssociationParameter& theta) {
    return std::exp(frank_log_pdf(p, theta));
}

double score_single(const UnitPair& p, const AssociationParameter& theta) {
    const double s1 = detail::taylor_s1(p.u1, p.u2);
    const double s2 = detail::taylor_s2(p.u1, p.u2);
    if (theta.is_independence_limit()) return s1;
    const double t = theta.value();
    if (std::fabs(t) < kSmallTheta) return s1 + 2.0 * t * s2;
    return 1.0 / t + 1.0 / std::expm1(t) - (p.u1 + p.u2) +
           2.0 * detail::score_ratio(p.u1, p.u2, t);
}

double conditional_cdf(double u2, double u1, const AssociationParameter& theta) {
    if (!(u1 > 0.0 && u1 < 1.0 && u2 > 0.0 && u2 < 1.0))
        throw BoundaryValue("conditional cdf arguments must lie in (0,1)");
    if (theta.is_independence_limit()) return u2;
    const double t = theta.value();
    if (std::fabs(t) <= 5.0) {
        // numerator e^{-t u1}(1 - e^{-t u2}); denominator is the bracket,
        // rewritten as -g - g1 g2 with g_x = e^{-t x} - 1. Same sign top
        // and bottom, all terms O(t) near zero; past |t| ~ 5 the denominator
        // sum starts cancelling, where the factored form takes over.
        const double g1 = std::expm1(-t * u1), g2 = std::expm1(-t * u2);
        const double num = (1.0 + g1) * (-g2);
        const double den = -std::expm1(-t) - g1 * g2;
        return num / den;
    }
    const auto lb = detail::log_bracket(u1, u2, t);
    const double log_num =
        -t * u1 + std::log(std::fabs(std::expm1(-t * u2)));
    return std::exp(log_num - lb.log_abs);
}

}  // namespace frankfit
