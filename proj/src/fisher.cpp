#include "frankfit/fisher.hpp"

#include <algorithm>
#include <cmath>

#include "frankfit/copula.hpp"
#include "frankfit/sampler.hpp"

namespace frankfit {

QuadratureSpec fisher_default_quadrature() {
    QuadratureSpec q;
    q.rule = QuadRule::FixedGaussLegendre;
    q.max_nodes = 128;
    q.abs_error_target = 1e-8;
    return q;
}

double i1_term(double theta) {
    if (theta == 0.0) throw Error("i1_term: theta must be nonzero");
    const double a = std::exp(-std::fabs(theta));  // e^t/(e^t-1)^2 is even
    const double om = -std::expm1(-std::fabs(theta));
    return 1.0 / (theta * theta) + a / (om * om);
}

double j_ratio(const UnitPair& p, double theta) {
    if (theta == 0.0) throw Error("j_ratio: theta must be nonzero");
    if (std::fabs(theta) > kThetaMax) throw OverflowGuard("j_ratio: |theta| > 700");
    const double u1 = p.u1, u2 = p.u2, s = u1 + u2;
    const double a1 = -theta * u1;
    const double a2 = -theta * u2;
    const double a3 = -theta;
    const double a4 = -theta * s;
    const double m = std::max(std::max(a1, a2), std::max(a3, a4));
    // +,+,-,- lets the constant parts of the shifted exponentials cancel
    // exactly; expm1 keeps the small-|theta| error at eps instead of
    // eps/|theta|, which matters because r^2 divides a 1/theta^2 numerator.
    const double r = std::expm1(a1 - m) + std::expm1(a2 - m) -
                     std::expm1(a3 - m) - std::expm1(a4 - m);
    // numerator terms scaled by e^{-2m}; every exponent is <= 2m so none of
    // the exponentials exceeds 1
    const double num = -(u1 - u2) * (u1 - u2) * std::exp(a4 - 2.0 * m)
                       + u1 * u1 * std::exp(a4 + a2 - 2.0 * m)
                       + u2 * u2 * std::exp(a4 + a1 - 2.0 * m)
                       - (s - 1.0) * (s - 1.0) * std::exp(a4 + a3 - 2.0 * m)
                       + (u2 - 1.0) * (u2 - 1.0) * std::exp(a2 + a3 - 2.0 * m)
                       + (u1 - 1.0) * (u1 - 1.0) * std::exp(a1 + a3 - 2.0 * m);
    return num / (r * r);
}

double i2_quadrature(double theta, const QuadratureSpec& q) {
    AssociationParameter th(theta);
    auto integrand = [&](double x, double y) {
        UnitPair p{x, y};
        return j_ratio(p, theta) * frank_pdf(p, th);
    };
    const int n = std::max(q.max_nodes, 8);
    const double full = integrate_unit_square(integrand, n);
    const double half = integrate_unit_square(integrand, n / 2);
    if (2.0 * std::fabs(full - half) > q.abs_error_target)
        throw QuadratureNotConverged("i2_quadrature: order refinement moved the result");
    return 2.0 * full;
}

FisherResult i2_monte_carlo(double theta, std::size_t m, const SeedSpec& seed) {
    if (m < 1000) throw Error("i2_monte_carlo: need at least 1000 draws");
    AssociationParameter th(theta);
    CounterRng rng(seed);
    double acc = 0.0, comp = 0.0, acc2 = 0.0, comp2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        UnitPair p = sample_pair(th, rng);
        double j = j_ratio(p, theta);
        double t = acc + j;
        comp += (std::fabs(acc) >= std::fabs(j)) ? (acc - t) + j : (j - t) + acc;
        acc = t;
        double jj = j * j;
        double t2 = acc2 + jj;
        comp2 += (std::fabs(acc2) >= std::fabs(jj)) ? (acc2 - t2) + jj
                                                    : (jj - t2) + acc2;
        acc2 = t2;
    }
    const double md = static_cast<double>(m);
    const double mean = (acc + comp) / md;
    const double var = std::fmax(0.0, (acc2 + comp2) / md - mean * mean);
    FisherResult res;
    res.theta = theta;
    res.i1 = i1_term(theta);
    res.i2 = 2.0 * mean;
    res.i_total = res.i1 - res.i2;
    res.method = FisherMethod::MonteCarlo;
    res.mc_standard_error = 2.0 * std::sqrt(var / md);
    return res;
}

FisherResult fisher_information(double theta, const QuadratureSpec& q) {
    FisherResult res;
    res.theta = theta;
    res.method = FisherMethod::Quadrature;
    res.mc_standard_error = 0.0;
    if (std::fabs(theta) < 1e-3) {
        // i1 and i2 both blow up as 2/theta^2 near 0; their difference is
        // smooth, so report the two-sided average at +/-1e-3
        const double ip = i1_term(1e-3) - i2_quadrature(1e-3, q);
        const double im = i1_term(-1e-3) - i2_quadrature(-1e-3, q);
        res.i_total = 0.5 * (ip + im);
        res.i1 = i1_term(1e-3);
        res.i2 = res.i1 - res.i_total;
        return res;
    }
    res.i1 = i1_term(theta);
    res.i2 = i2_quadrature(theta, q);
    res.i_total = res.i1 - res.i2;
    return res;
}

double asymptotic_variance(double theta) {
    FisherResult r = fisher_information(theta);
    if (r.i_total <= 0.0)
        throw Error("asymptotic_variance: nonpositive information");
    return 1.0 / r.i_total;
}

}  // namespace frankfit
