#pragma once

#include <cmath>
#include <utility>

namespace frankfit {

struct RootResult {
    double root = 0.0;
    double f_at_root = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// Brent-style safeguarded solve on a bracketing interval [a, b] with
// f(a) f(b) <= 0: inverse-quadratic / secant steps with a bisection
// fallback. Runs the interval down to floating-point resolution so the
// residual is limited by the function's conditioning, not the solver.
template <typename F>
RootResult solve_bracketed(F&& f, double a, double b, double fa, double fb,
                           int max_iter = 200) {
    RootResult res;
    res.bracket_lo = a;
    res.bracket_hi = b;
    if (fa == 0.0) return {a, 0.0, 0, a, b};
    if (fb == 0.0) return {b, 0.0, 0, a, b};

    double c = a, fc = fa;
    double d = b - a, e = d;
    int it = 0;
    for (; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1.11e-16 * std::fabs(b) + 1e-300;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) break;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, qd;
            if (a == c) {
                p = 2.0 * xm * s;
                qd = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                qd = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) qd = -qd;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * qd - std::fabs(tol1 * qd),
                                    std::fabs(e * qd))) {
                e = d;
                d = p / qd;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    res.root = b;
    res.f_at_root = fb;
    res.iterations = it;
    return res;
}

}  // namespace frankfit
