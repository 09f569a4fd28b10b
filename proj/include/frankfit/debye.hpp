#pragma once

#include "frankfit/quadrature.hpp"
#include "frankfit/types.hpp"

namespace frankfit {

inline QuadratureSpec debye_default_quadrature() {
    return {QuadRule::FixedGaussLegendre, 61, 1e-12};
}

// D*_k(theta) = k theta^{-k} \int_0^theta t^k/(e^t - 1) dt, k in {1,2},
// defined for all real theta (D*_k(0) = 1 by continuity).
double debye_dk(int k, double theta,
                const QuadratureSpec& q = debye_default_quadrature());

// Population Kendall tau of the copula as a function of theta.
double tau_of_theta(double theta,
                    const QuadratureSpec& q = debye_default_quadrature());

// Population Spearman rho of the copula as a function of theta.
double rho_of_theta(double theta,
                    const QuadratureSpec& q = debye_default_quadrature());

}  // namespace frankfit
