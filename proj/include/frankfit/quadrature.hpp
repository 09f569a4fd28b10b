#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "frankfit/types.hpp"

namespace frankfit {

enum class QuadRule { FixedGaussLegendre, AdaptiveBisection };

struct QuadratureSpec {
    QuadRule rule = QuadRule::FixedGaussLegendre;
    int max_nodes = 64;  // per axis for tensor rules
    double abs_error_target = 1e-10;
};

struct GlNode {
    double x;  // abscissa on [-1, 1]
    double w;
};

// Nodes/weights of the n-point Gauss-Legendre rule, computed once per n and
// cached (thread-safe).
const std::vector<GlNode>& gauss_legendre(int n);

namespace detail {

template <typename F>
double gl_segment(F&& f, double a, double b, const std::vector<GlNode>& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0, comp = 0.0;
    for (const auto& nd : rule) {
        double term = nd.w * f(mid + half * nd.x);
        double t = acc + term;
        comp += (std::fabs(acc) >= std::fabs(term)) ? (acc - t) + term
                                                    : (term - t) + acc;
        acc = t;
    }
    return (acc + comp) * half;
}

template <typename F>
double adaptive_rec(F&& f, double a, double b, double whole, double tol,
                    int& nodes_left) {
    const auto& rule = gauss_legendre(15);
    double mid = 0.5 * (a + b);
    double left = gl_segment(f, a, mid, rule);
    double right = gl_segment(f, mid, b, rule);
    nodes_left -= 30;
    if (nodes_left < 0)
        throw QuadratureNotConverged("adaptive bisection exceeded node budget");
    double err = std::fabs(left + right - whole);
    if (err <= tol || b - a < 1e-14 * (1.0 + std::fabs(a)))
        return left + right;
    return adaptive_rec(f, a, mid, left, 0.5 * tol, nodes_left) +
           adaptive_rec(f, mid, b, right, 0.5 * tol, nodes_left);
}

}  // namespace detail

template <typename F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& q) {
    if (a == b) return 0.0;
    if (q.rule == QuadRule::FixedGaussLegendre)
        return detail::gl_segment(f, a, b, gauss_legendre(q.max_nodes));
    int budget = q.max_nodes;
    double whole = detail::gl_segment(f, a, b, gauss_legendre(15));
    budget -= 15;
    return detail::adaptive_rec(f, a, b, whole, q.abs_error_target, budget);
}

// Tensor-product integral of f(x, y) over the unit square; max_nodes is the
// per-axis order.
template <typename F>
double integrate_unit_square(F&& f, int nodes_per_axis) {
    const auto& rule = gauss_legendre(nodes_per_axis);
    double acc = 0.0, comp = 0.0;
    for (const auto& nx : rule) {
        double x = 0.5 * (1.0 + nx.x);
        for (const auto& ny : rule) {
            double y = 0.5 * (1.0 + ny.x);
            double term = nx.w * ny.w * f(x, y);
            double t = acc + term;
            comp += (std::fabs(acc) >= std::fabs(term)) ? (acc - t) + term
                                                        : (term - t) + acc;
            acc = t;
        }
    }
    return 0.25 * (acc + comp);
}

}  // namespace frankfit
