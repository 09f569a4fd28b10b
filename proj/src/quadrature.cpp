#include "frankfit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace frankfit {

namespace {

// Newton iteration on the Legendre recurrence; standard Golub-Welsch-free
// construction, good to ~1 ulp for the orders used here.
std::vector<GlNode> build_gl(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    std::vector<GlNode> out(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        out[i] = {-x, w};
        out[n - 1 - i] = {x, w};
    }
    return out;
}

}  // namespace

const std::vector<GlNode>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<GlNode>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gl(n)).first;
    return it->second;
}

}  // namespace frankfit
