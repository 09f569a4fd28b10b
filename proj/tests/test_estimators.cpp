#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "frankfit/debye.hpp"
#include "frankfit/estimators.hpp"
#include "frankfit/sampler.hpp"

using namespace frankfit;

namespace {

BivariateSample flipped(const BivariateSample& s) {
    BivariateSample out;
    for (const UnitPair& p : s.pairs()) out.push_back(UnitPair{p.u1, 1.0 - p.u2});
    return out;
}

}  // namespace

TEST_CASE("midranks average ties and stay 1-based") {
    CHECK(midranks({0.9, 0.1, 0.5}) == std::vector<double>{3.0, 1.0, 2.0});
    CHECK(midranks({5.0, 5.0, 7.0}) == std::vector<double>{1.5, 1.5, 3.0});
    CHECK(midranks({2.0, 2.0, 2.0, 2.0}) ==
          std::vector<double>{2.5, 2.5, 2.5, 2.5});
    CHECK(midranks({4.0}) == std::vector<double>{1.0});
}

TEST_CASE("adjusted pseudo-observations match the worked example") {
    RawBivariateData d{{3.0, 1.0, 2.0}, {10.0, 30.0, 20.0}};
    BivariateSample s = pseudo_observations(d, PseudoMode::Adjusted);
    REQUIRE(s.n() == 3);
    CHECK(s.pairs()[0].u1 == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(s.pairs()[1].u1 == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(s.pairs()[2].u1 == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(s.pairs()[0].u2 == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(s.pairs()[1].u2 == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(s.pairs()[2].u2 == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("raw pseudo-observations put the maximum on the boundary") {
    RawBivariateData d{{10.0, 20.0}, {1.0, 2.0}};
    CHECK_THROWS_AS(pseudo_observations(d, PseudoMode::Raw), BoundaryValue);
    CHECK_NOTHROW(pseudo_observations(d, PseudoMode::Adjusted));
}

TEST_CASE("tied raw data keeps the boundary rule per coordinate") {
    // ties in x1 average to midrank 1.5 -> 0.5; the unique maximum still
    // lands on 1 in raw mode
    RawBivariateData d{{5.0, 5.0, 7.0}, {1.0, 2.0, 3.0}};
    CHECK_THROWS_AS(pseudo_observations(d, PseudoMode::Raw), BoundaryValue);
    BivariateSample s = pseudo_observations(d, PseudoMode::Adjusted);
    CHECK(s.pairs()[0].u1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.pairs()[1].u1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.pairs()[2].u1 == doctest::Approx(0.875).epsilon(1e-15));
}

TEST_CASE("rank correlations reproduce the dataset values") {
    BivariateSample s = ref::sample25();
    CHECK(kendall_tau_hat(s) == doctest::Approx(ref::kSample25Tau).epsilon(1e-15));
    CHECK(spearman_rho_hat(s) ==
          doctest::Approx(ref::kSample25Rho).epsilon(1e-15));
}

TEST_CASE("rank correlations hit the monotone extremes") {
    BivariateSample inc, dec;
    for (int i = 1; i <= 10; ++i) {
        double u = i / 11.0;
        inc.push_back(UnitPair{u, u * 0.9 + 0.05});
        dec.push_back(UnitPair{u, 1.0 - u});
    }
    CHECK(kendall_tau_hat(inc) == 1.0);
    CHECK(spearman_rho_hat(inc) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kendall_tau_hat(dec) == -1.0);
    CHECK(spearman_rho_hat(dec) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("kendall tie fallback scores per-coordinate factors") {
    // pairs: (0.2,0.2),(0.2,0.4),(0.5,0.3). Pair (1,2): tie in u1,
    // concordant u2 -> +1. Pair (1,3): +1. Pair (2,3): u1 up, u2 down -> -1.
    BivariateSample s;
    s.push_back(UnitPair{0.2, 0.2});
    s.push_back(UnitPair{0.2, 0.4});
    s.push_back(UnitPair{0.5, 0.3});
    CHECK(kendall_tau_hat(s) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("kendall fast path agrees with the pairwise definition") {
    CounterRng rng(SeedSpec{31, 2});
    BivariateSample s;
    for (int i = 0; i < 200; ++i)
        s.push_back(UnitPair{rng.uniform01_open(), rng.uniform01_open()});
    double fast = kendall_tau_hat(s);
    double slow = 0.0;
    const auto& p = s.pairs();
    for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t l = k + 1; l < p.size(); ++l) {
            double s1 = (p[k].u1 <= p[l].u1) ? 1.0 : -1.0;
            double s2 = (p[k].u2 <= p[l].u2) ? 1.0 : -1.0;
            slow += s1 * s2;
        }
    slow /= 0.5 * 200.0 * 199.0;
    CHECK(fast == doctest::Approx(slow).epsilon(1e-15));
}

TEST_CASE("normal-equation function matches references") {
    BivariateSample s = ref::sample25();
    CHECK(ref::close(h_of_theta(s, 1.0), ref::kSample25H1, 1e-15));
    CHECK(ref::close(h_of_theta(s, 600.0), ref::kSample25H600, 1e-15));
    CHECK(ref::close(h_of_theta(s, -600.0), ref::kSample25Hm600, 1e-15));
    // Near zero each score term subtracts 1/theta-sized pieces, so a few
    // times (1/theta) * eps of cancellation noise (~3e-14 at 1e-3) remains.
    CHECK(ref::close(h_of_theta(s, 1e-3), ref::kSample25H1em3, 5e-13));
    CHECK(ref::close(h_of_theta(s, -1e-3), ref::kSample25Hm1em3, 5e-13));
}

TEST_CASE("zero limit of the normal equation") {
    BivariateSample s = ref::sample25();
    double h0 = h_at_zero_limit(s);
    // direct evaluation of mean (1-2u1)(1-2u2)/2
    double direct = 0.0;
    for (const UnitPair& p : s.pairs())
        direct += 0.5 * (1.0 - 2.0 * p.u1) * (1.0 - 2.0 * p.u2);
    direct /= static_cast<double>(s.n());
    CHECK(h0 == doctest::Approx(direct).epsilon(1e-15));
    // continuity: evaluations just off zero agree to the curvature scale
    CHECK(std::fabs(h_of_theta(s, 1e-3) - h0) < 5e-3);
    CHECK(std::fabs(h_of_theta(s, -1e-3) - h0) < 5e-3);
    CHECK(std::fabs(0.5 * (h_of_theta(s, 1e-3) + h_of_theta(s, -1e-3)) - h0) <
          1e-6);
}

TEST_CASE("log-likelihood matches references and vanishes at independence") {
    BivariateSample s = ref::sample25();
    CHECK(ref::close(log_likelihood(s, AssociationParameter(0.5)),
                     ref::kSample25Loglik05, 1e-12));
    CHECK(ref::close(log_likelihood(s, AssociationParameter(3.0)),
                     ref::kSample25Loglik3, 1e-12));
    CHECK(log_likelihood(s, AssociationParameter::independence()) == 0.0);
}

TEST_CASE("normal equation is the likelihood derivative") {
    BivariateSample s = ref::sample25();
    for (double t : {-4.0, 0.8, 2.5}) {
        double h = 1e-6;
        double fd = (log_likelihood(s, AssociationParameter(t + h)) -
                     log_likelihood(s, AssociationParameter(t - h))) /
                    (2.0 * h * static_cast<double>(s.n()));
        CHECK(ref::close(h_of_theta(s, t), fd, 1e-8));
    }
}

TEST_CASE("maximum-likelihood estimate reproduces the dataset value") {
    BivariateSample s = ref::sample25();
    EstimateResult r = mle_estimate(s);
    CHECK(ref::close(r.theta_hat, ref::kSample25ThetaMl, 1e-12));
    CHECK(r.residual <= 1e-8);
    CHECK(r.method == Method::ML);
    CHECK(!r.independence_flag);
    CHECK(!r.multiplicity_warning);
    CHECK(ref::close(log_likelihood(s, AssociationParameter(r.theta_hat)),
                     ref::kSample25LoglikAtMl, 1e-12));
    // the root is a local maximum: likelihood falls off on both sides
    double ll = ref::kSample25LoglikAtMl;
    CHECK(log_likelihood(s, AssociationParameter(r.theta_hat + 0.2)) < ll);
    CHECK(log_likelihood(s, AssociationParameter(r.theta_hat - 0.2)) < ll);
}

TEST_CASE("moment estimates reproduce the dataset values") {
    BivariateSample s = ref::sample25();
    EstimateResult m1 = mme_tau_estimate(s);
    EstimateResult m2 = mme_rho_estimate(s);
    CHECK(ref::close(m1.theta_hat, ref::kSample25ThetaMm1, 1e-12));
    CHECK(ref::close(m2.theta_hat, ref::kSample25ThetaMm2, 1e-12));
    CHECK(m1.method == Method::MM1);
    CHECK(m2.method == Method::MM2);
    // the estimate inverts the map exactly at the sample statistic
    CHECK(ref::close(tau_of_theta(m1.theta_hat), kendall_tau_hat(s), 1e-12));
    CHECK(ref::close(rho_of_theta(m2.theta_hat), spearman_rho_hat(s), 1e-12));
}

TEST_CASE("moment inversion roundtrips exact map values") {
    // feed tau(3) as the sample statistic via a synthetic sample is not
    // possible; instead check the solver through the public estimate on
    // samples whose statistic we control is covered elsewhere. Here:
    // inversion residuals from the dataset estimates.
    BivariateSample s = ref::sample25();
    CHECK(mme_tau_estimate(s).residual <= 1e-8);
    CHECK(mme_rho_estimate(s).residual <= 1e-8);
}

TEST_CASE("estimators are invariant to strictly increasing margins") {
    BivariateSample s = ref::sample25();
    RawBivariateData raw, warped;
    for (const UnitPair& p : s.pairs()) {
        raw.x1.push_back(p.u1);
        raw.x2.push_back(p.u2);
        warped.x1.push_back(std::exp(3.0 * p.u1));
        warped.x2.push_back(std::atan(5.0 * p.u2));
    }
    BivariateSample a = pseudo_observations(raw, PseudoMode::Adjusted);
    BivariateSample b = pseudo_observations(warped, PseudoMode::Adjusted);
    CHECK(kendall_tau_hat(a) == kendall_tau_hat(b));
    CHECK(spearman_rho_hat(a) == spearman_rho_hat(b));
    CHECK(mle_estimate(a).theta_hat == mle_estimate(b).theta_hat);
    CHECK(mme_tau_estimate(a).theta_hat == mme_tau_estimate(b).theta_hat);
    CHECK(mme_rho_estimate(a).theta_hat == mme_rho_estimate(b).theta_hat);
}

TEST_CASE("estimators are invariant to observation order") {
    BivariateSample s = ref::sample25();
    std::vector<UnitPair> perm(s.pairs());
    std::mt19937 g(12345);
    std::shuffle(perm.begin(), perm.end(), g);
    BivariateSample sp;
    for (const UnitPair& p : perm) sp.push_back(p);
    CHECK(kendall_tau_hat(sp) ==
          doctest::Approx(kendall_tau_hat(s)).epsilon(1e-15));
    CHECK(ref::close(mle_estimate(sp).theta_hat, ref::kSample25ThetaMl, 1e-9));
    CHECK(ref::close(mme_tau_estimate(sp).theta_hat, ref::kSample25ThetaMm1,
                     1e-9));
}

TEST_CASE("flip of one coordinate negates every estimate") {
    BivariateSample s = ref::sample25();
    BivariateSample f = flipped(s);
    CHECK(std::fabs(mle_estimate(s).theta_hat + mle_estimate(f).theta_hat) <
          2e-8);
    CHECK(std::fabs(mme_tau_estimate(s).theta_hat +
                    mme_tau_estimate(f).theta_hat) < 2e-8);
    CHECK(std::fabs(mme_rho_estimate(s).theta_hat +
                    mme_rho_estimate(f).theta_hat) < 2e-8);
    // the rank statistics flip sign exactly
    CHECK(kendall_tau_hat(f) == -kendall_tau_hat(s));
    CHECK(spearman_rho_hat(f) ==
          doctest::Approx(-spearman_rho_hat(s)).epsilon(1e-15));
}

TEST_CASE("estimates concentrate near the truth for large samples") {
    for (double t : {-5.0, 2.0, 8.0}) {
        BivariateSample s =
            sample_n(AssociationParameter(t), 10000, SeedSpec{606, 9});
        CAPTURE(t);
        CHECK(std::fabs(mle_estimate(s).theta_hat - t) < 0.5);
        CHECK(std::fabs(mme_tau_estimate(s).theta_hat - t) < 0.5);
        CHECK(std::fabs(mme_rho_estimate(s).theta_hat - t) < 0.5);
    }
}

TEST_CASE("near-independent samples raise the independence flag") {
    // second margin ranks [2,4,1,3]: three concordant and three discordant
    // index pairs, so tau_hat = 0 exactly (and rho_hat = 0 as well)
    BivariateSample s;
    s.push_back(UnitPair{0.2, 0.4});
    s.push_back(UnitPair{0.4, 0.9});
    s.push_back(UnitPair{0.6, 0.1});
    s.push_back(UnitPair{0.8, 0.6});
    REQUIRE(kendall_tau_hat(s) == 0.0);
    REQUIRE(spearman_rho_hat(s) == 0.0);
    EstimateResult r1 = mme_tau_estimate(s);
    EstimateResult r2 = mme_rho_estimate(s);
    CHECK(r1.independence_flag);
    CHECK(r1.theta_hat == 0.0);
    CHECK(r2.independence_flag);
    CHECK(r2.theta_hat == 0.0);
}

TEST_CASE("comonotone data pushes the likelihood out of the box") {
    BivariateSample s;
    for (int i = 1; i <= 20; ++i) {
        double u = i / 21.0;
        s.push_back(UnitPair{u, u});
    }
    CHECK_THROWS_AS(mle_estimate(s), NoBracket);
    try {
        mle_estimate(s);
    } catch (const NoBracket& e) {
        CHECK(e.boundary_estimate == 700.0);
    }
}

TEST_CASE("perfect concordance is outside the moment image") {
    BivariateSample s;
    for (int i = 1; i <= 20; ++i) {
        double u = i / 21.0;
        s.push_back(UnitPair{u, u});
    }
    REQUIRE(kendall_tau_hat(s) == 1.0);
    CHECK_THROWS_AS(mme_tau_estimate(s), MomentOutOfRange);
    CHECK_THROWS_AS(mme_rho_estimate(s), MomentOutOfRange);
    try {
        mme_tau_estimate(s);
    } catch (const MomentOutOfRange& e) {
        CHECK(e.boundary_estimate == 700.0);
    }
    // countermonotone data exits through the negative wall
    BivariateSample d;
    for (int i = 1; i <= 20; ++i) {
        double u = i / 21.0;
        d.push_back(UnitPair{u, 1.0 - u});
    }
    try {
        mme_tau_estimate(d);
        CHECK(false);
    } catch (const MomentOutOfRange& e) {
        CHECK(e.boundary_estimate == -700.0);
    }
}

TEST_CASE("degenerate samples are rejected") {
    BivariateSample s;
    for (int i = 0; i < 5; ++i) s.push_back(UnitPair{0.4, 0.6});
    CHECK_THROWS_AS(mle_estimate(s), DegenerateSample);
}

TEST_CASE("a moderate statistic far from the box solves cleanly") {
    // tau close to but below the theta = 700 image still inverts
    BivariateSample s = sample_n(AssociationParameter(30.0), 400, SeedSpec{21, 3});
    EstimateResult r = mme_tau_estimate(s);
    CHECK(r.theta_hat > 15.0);
    CHECK(r.theta_hat < 700.0);
    CHECK(ref::close(tau_of_theta(r.theta_hat), kendall_tau_hat(s), 1e-10));
}
