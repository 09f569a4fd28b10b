#include "frankfit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "frankfit/copula.hpp"
#include "frankfit/debye.hpp"
#include "frankfit/rootfind.hpp"

namespace frankfit {

namespace {

// Neumaier-compensated accumulator; used everywhere a mean over pairs is
// formed so that results do not depend on traversal-order rewrites.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

bool has_ties(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

// Counts inversions of v by merge sort (v is consumed).
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) +
                        count_inversions(v, buf, mid, hi);
    std::merge(v.begin() + lo, v.begin() + mid, v.begin() + mid, v.begin() + hi,
               buf.begin() + lo);
    // count pairs (i in left, j in right) with v[i] > v[j]
    std::size_t i = lo, j = mid;
    while (i < mid && j < hi) {
        if (v[i] > v[j]) {
            inv += static_cast<std::uint64_t>(mid - i);
            ++j;
        } else {
            ++i;
        }
    }
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return inv;
}

}  // namespace

std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        // positions i+1 .. j+1 share one value; average them
        double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = mid;
        i = j + 1;
    }
    return r;
}

BivariateSample pseudo_observations(const RawBivariateData& data, PseudoMode mode) {
    if (data.x1.size() != data.x2.size())
        throw Error("pseudo_observations: column length mismatch");
    const std::size_t n = data.x1.size();
    if (n < 2) throw Error("pseudo_observations: need at least 2 observations");
    std::vector<double> r1 = midranks(data.x1);
    std::vector<double> r2 = midranks(data.x2);
    BivariateSample out;
    const double nn = static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        double u1, u2;
        if (mode == PseudoMode::Raw) {
            u1 = r1[j] / nn;
            u2 = r2[j] / nn;
        } else {
            u1 = (r1[j] + 0.5) / (nn + 1.0);
            u2 = (r2[j] + 0.5) / (nn + 1.0);
        }
        out.push_back(UnitPair{u1, u2});  // raw mode: rank n trips BoundaryValue
    }
    return out;
}

double kendall_tau_hat(const BivariateSample& s) {
    const std::size_t n = s.n();
    if (n < 2) throw Error("kendall_tau_hat: need at least 2 pairs");
    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = s.pairs()[j].u1;
        b[j] = s.pairs()[j].u2;
    }
    const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    if (!has_ties(a) && !has_ties(b)) {
        // tie-free: concordance sum = total - 2 * (inversions of u2 after
        // sorting by u1)
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
        std::vector<double> seq(n), buf(n);
        for (std::size_t j = 0; j < n; ++j) seq[j] = b[idx[j]];
        std::uint64_t inv = count_inversions(seq, buf, 0, n);
        return (total - 2.0 * static_cast<double>(inv)) / total;
    }
    // with ties: direct double loop on the two +/-1 coordinate factors,
    // where "not greater" counts as +1
    std::int64_t acc = 0;
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            int s1 = (a[k] <= a[l]) ? 1 : -1;
            int s2 = (b[k] <= b[l]) ? 1 : -1;
            acc += s1 * s2;
        }
    return static_cast<double>(acc) / total;
}

double spearman_rho_hat(const BivariateSample& s) {
    const std::size_t n = s.n();
    if (n < 2) throw Error("spearman_rho_hat: need at least 2 pairs");
    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = s.pairs()[j].u1;
        b[j] = s.pairs()[j].u2;
    }
    std::vector<double> r1 = midranks(a), r2 = midranks(b);
    Kahan d2;
    for (std::size_t j = 0; j < n; ++j) {
        double d = r1[j] - r2[j];
        d2.add(d * d);
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * d2.value() / (nn * (nn * nn - 1.0));
}

double h_of_theta(const BivariateSample& s, double theta) {
    AssociationParameter th(theta);
    Kahan acc;
    for (const UnitPair& p : s.pairs()) acc.add(score_single(p, th));
    return acc.value() / static_cast<double>(s.n());
}

double h_at_zero_limit(const BivariateSample& s) {
    Kahan acc;
    for (const UnitPair& p : s.pairs()) acc.add(detail::taylor_s1(p.u1, p.u2));
    return acc.value() / static_cast<double>(s.n());
}

double log_likelihood(const BivariateSample& s, const AssociationParameter& theta) {
    Kahan acc;
    for (const UnitPair& p : s.pairs()) acc.add(frank_log_pdf(p, theta));
    return acc.value();
}

namespace {

EstimateResult independence_result(Method m) {
    EstimateResult r;
    r.theta_hat = 0.0;
    r.method = m;
    r.independence_flag = true;
    return r;
}

// Shared driver for the two moment estimators: invert a strictly
// increasing odd map theta -> value at the sample statistic.
template <typename Map>
EstimateResult invert_moment(double stat, Method method, Map&& map, double tol) {
    if (std::fabs(stat) < 1e-12) return independence_result(method);
    const double side = (stat > 0.0) ? 1.0 : -1.0;
    const double target = std::fabs(stat);
    auto g = [&](double m) { return map(side * m) * side - target; };

    double lo = 0.0, g_lo = -target;
    double hi = 1e-3, g_hi = g(hi);
    int expansions = 0;
    while (g_hi < 0.0 && hi < kThetaMax) {
        lo = hi;
        g_lo = g_hi;
        hi = std::fmin(2.0 * hi, kThetaMax);
        g_hi = g(hi);
        ++expansions;
    }
    if (g_hi < 0.0)
        throw MomentOutOfRange("moment equation unsolvable inside the theta box",
                               side * kThetaMax);

    RootResult root = solve_bracketed(g, lo, hi, g_lo, g_hi);
    EstimateResult r;
    r.theta_hat = side * root.root;
    r.method = method;
    r.iterations = expansions + root.iterations;
    r.residual = std::fabs(root.f_at_root);
    r.bracket_lo = std::fmin(side * lo, side * hi);
    r.bracket_hi = std::fmax(side * lo, side * hi);
    // The solve runs to machine resolution, so the requested tolerance acts
    // as a guarantee on the accepted residual rather than a stopping rule.
    if (!(r.residual <= tol))
        throw Error("moment inversion stalled above the requested tolerance");
    return r;
}

}  // namespace

EstimateResult mme_tau_estimate(const BivariateSample& s, double tol) {
    double t = kendall_tau_hat(s);
    return invert_moment(t, Method::MM1, [](double th) { return tau_of_theta(th); },
                         tol);
}

EstimateResult mme_rho_estimate(const BivariateSample& s, double tol) {
    double r = spearman_rho_hat(s);
    return invert_moment(r, Method::MM2, [](double th) { return rho_of_theta(th); },
                         tol);
}

EstimateResult mle_estimate(const BivariateSample& s, double tol) {
    const std::size_t n = s.n();
    if (n < 2) throw Error("mle_estimate: need at least 2 pairs");
    bool degenerate = true;
    for (std::size_t j = 1; j < n && degenerate; ++j)
        degenerate = s.pairs()[j].u1 == s.pairs()[0].u1 &&
                     s.pairs()[j].u2 == s.pairs()[0].u2;
    if (degenerate) throw DegenerateSample("mle_estimate: all pairs identical");

    const double h0 = h_at_zero_limit(s);
    if (h0 == 0.0) return independence_result(Method::ML);
    const double side = (h0 > 0.0) ? 1.0 : -1.0;
    auto h = [&](double m) { return h_of_theta(s, side * m); };

    // H is continuous through 0 with value h0, so the root (where H
    // crosses 0) lies on the side where the far limit flips the sign.
    double lo = 1e-3, f_lo = h(lo);
    int expansions = 0;
    if (f_lo * h0 <= 0.0) {
        // crossed already within (0, 1e-3]; bracket against the origin
        if (f_lo == 0.0) {
            EstimateResult r;
            r.theta_hat = side * lo;
            r.method = Method::ML;
            r.residual = 0.0;
            r.bracket_lo = r.bracket_hi = side * lo;
            return r;
        }
        lo = 1e-9;
        f_lo = h(lo);
        if (f_lo * h0 <= 0.0) {
            // crossing below 1e-9: indistinguishable from independence at
            // the resolution of H
            return independence_result(Method::ML);
        }
    }
    double hi = lo, f_hi = f_lo;
    while (f_hi * f_lo > 0.0 && hi < kThetaMax) {
        lo = hi;
        f_lo = f_hi;
        hi = std::fmin(2.0 * hi, kThetaMax);
        f_hi = h(hi);
        ++expansions;
    }
    if (f_hi * f_lo > 0.0)
        throw NoBracket("normal equation keeps one sign inside the theta box",
                        side * kThetaMax);

    RootResult root = solve_bracketed(h, lo, hi, f_lo, f_hi);
    EstimateResult r;
    r.theta_hat = side * root.root;
    r.method = Method::ML;
    r.iterations = expansions + root.iterations;
    r.residual = std::fabs(root.f_at_root);
    r.bracket_lo = std::fmin(side * lo, side * hi);
    r.bracket_hi = std::fmax(side * lo, side * hi);

    // Coarse rescan for additional sign changes near the found root. The
    // window covers [0, max(2|root|+2, 10)] on the search side; beyond it
    // H keeps the sign of its tail limit.
    const double window = std::fmin(std::fmax(2.0 * root.root + 2.0, 10.0), kThetaMax);
    double best_theta = r.theta_hat;
    double best_ll = log_likelihood(s, AssociationParameter(r.theta_hat));
    double prev_m = 1e-3, prev_f = h(prev_m);
    int crossings = (root.root < prev_m) ? 1 : 0;  // root below the scan start
    for (double m = 0.5; m <= window + 0.25; m += 0.5) {
        double fm = h(m);
        if (prev_f * fm < 0.0) {
            ++crossings;
            bool contains_root = (prev_m <= root.root && root.root <= m);
            if (!contains_root) {
                RootResult extra = solve_bracketed(h, prev_m, m, prev_f, fm);
                double cand = side * extra.root;
                double ll = log_likelihood(s, AssociationParameter(cand));
                if (ll > best_ll) {
                    best_ll = ll;
                    best_theta = cand;
                    r.residual = std::fabs(extra.f_at_root);
                    r.bracket_lo = std::fmin(side * prev_m, side * m);
                    r.bracket_hi = std::fmax(side * prev_m, side * m);
                }
            }
        }
        prev_m = m;
        prev_f = fm;
    }
    if (crossings > 1) r.multiplicity_warning = true;
    r.theta_hat = best_theta;
    // Machine-resolution solving makes tol a guarantee, not a stopping rule.
    if (!(r.residual <= tol))
        throw Error("normal equation solve stalled above the requested tolerance");
    return r;
}

}  // namespace frankfit
