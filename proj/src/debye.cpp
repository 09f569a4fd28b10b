#include "frankfit/debye.hpp"

#include <cmath>
#include <stdexcept>

namespace frankfit {

namespace {

constexpr double kZeta3 = 1.2020569031595942854;

// k! zeta(k+1) = \int_0^infty t^k/(e^t - 1) dt.
double full_line_integral(int k) {
    return k == 1 ? M_PI * M_PI / 6.0 : 2.0 * kZeta3;
}

// \int_x^infty t^k/(e^t - 1) dt as a geometric-series tail; for x > 30 three
// terms leave a remainder below e^{-4x} ~ 1e-52.
double tail_integral(int k, double x) {
    double tail = 0.0;
    for (int m = 1; m <= 3; ++m) {
        double e = std::exp(-m * x);
        if (e == 0.0) break;
        double poly = (k == 1) ? x / m + 1.0 / (m * m)
                               : x * x / m + 2.0 * x / (m * m) +
                                     2.0 / (m * m * m);
        tail += e * poly;
    }
    return tail;
}

}  // namespace

double debye_dk(int k, double theta, const QuadratureSpec& q) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("debye_dk: k must be 1 or 2");
    if (std::fabs(theta) < kSmallTheta) {
        // 1 - k t/(2(k+1)) + k t^2/(12(k+2)) + O(t^4)
        return 1.0 - k * theta / (2.0 * (k + 1)) +
               k * theta * theta / (12.0 * (k + 2));
    }
    if (theta < 0.0)
        return debye_dk(k, -theta, q) - k * theta / (k + 1);
    double integral;
    if (theta > 30.0) {
        integral = full_line_integral(k) - tail_integral(k, theta);
    } else {
        // t^k/(e^t - 1) = t^{k-1} * t/expm1(t); expm1 keeps the integrand
        // accurate through the removable point at 0.
        auto f = [k](double t) {
            double base = t / std::expm1(t);
            return k == 1 ? base : t * base;
        };
        integral = integrate_1d(f, 0.0, theta, q);
    }
    return k * std::pow(theta, -k) * integral;
}

double tau_of_theta(double theta, const QuadratureSpec& q) {
    if (std::fabs(theta) < kSmallTheta)
        return theta / 9.0 - theta * theta * theta / 900.0;
    return 1.0 - (4.0 / theta) * (1.0 - debye_dk(1, theta, q));
}

double rho_of_theta(double theta, const QuadratureSpec& q) {
    if (std::fabs(theta) < kSmallTheta)
        return theta / 6.0 - theta * theta * theta / 450.0;
    return 1.0 -
           (12.0 / theta) * (debye_dk(1, theta, q) - debye_dk(2, theta, q));
}

}  // namespace frankfit
