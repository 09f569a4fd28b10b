#include "frankfit/simstudy.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "frankfit/estimators.hpp"
#include "frankfit/sampler.hpp"

namespace frankfit {

namespace {

struct Accum {
    double se = 0.0, ce = 0.0;    // sum of errors
    double s2 = 0.0, c2 = 0.0;    // sum of squared errors
    double s4 = 0.0, c4 = 0.0;    // sum of fourth powers
    std::size_t ok = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;

    static void comp_add(double& s, double& c, double x) {
        double t = s + x;
        c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }

    void add(double e, double residual) {
        comp_add(se, ce, e);
        double e2 = e * e;
        comp_add(s2, c2, e2);
        comp_add(s4, c4, e2 * e2);
        if (residual > max_residual) max_residual = residual;
        ++ok;
    }

    MethodMetrics finish(double theta) const {
        MethodMetrics m;
        m.failures = failures;
        m.max_residual = max_residual;
        if (ok == 0) {
            m.bias = m.mse = m.rbias = m.rmse = m.se_bias = m.se_mse =
                std::numeric_limits<double>::quiet_NaN();
            return m;
        }
        const double L = static_cast<double>(ok);
        m.bias = (se + ce) / L;
        m.mse = (s2 + c2) / L;
        if (theta != 0.0) {
            m.rbias = m.bias / std::fabs(theta);
            m.rmse = m.mse / (theta * theta);
        } else {
            m.rbias = std::numeric_limits<double>::quiet_NaN();
            m.rmse = std::numeric_limits<double>::quiet_NaN();
        }
        m.se_bias = std::sqrt(std::fmax(0.0, m.mse - m.bias * m.bias) / L);
        const double mean4 = (s4 + c4) / L;
        m.se_mse = std::sqrt(std::fmax(0.0, mean4 - m.mse * m.mse) / L);
        return m;
    }
};

}  // namespace

MetricsRow run_cell(const SimulationCell& cell) {
    if (cell.n < 2) throw Error("run_cell: sample size below 2");
    if (cell.replications < 1) throw Error("run_cell: no replications");
    const AssociationParameter theta =
        cell.theta == 0.0 ? AssociationParameter::independence()
                          : AssociationParameter(cell.theta);
    Accum ml, mm1, mm2;
    for (std::size_t l = 0; l < cell.replications; ++l) {
        SeedSpec rep_seed{cell.seed.base_seed,
                          (cell.seed.stream_id << 32) |
                              static_cast<std::uint64_t>(l)};
        BivariateSample s = sample_n(theta, cell.n, rep_seed);
        try {
            EstimateResult r = mle_estimate(s);
            ml.add(r.theta_hat - cell.theta, r.residual);
        } catch (const Error&) {
            ++ml.failures;
        }
        try {
            EstimateResult r = mme_tau_estimate(s);
            mm1.add(r.theta_hat - cell.theta, r.residual);
        } catch (const Error&) {
            ++mm1.failures;
        }
        try {
            EstimateResult r = mme_rho_estimate(s);
            mm2.add(r.theta_hat - cell.theta, r.residual);
        } catch (const Error&) {
            ++mm2.failures;
        }
    }
    MetricsRow row;
    row.n = cell.n;
    row.theta = cell.theta;
    row.replications = cell.replications;
    row.ml = ml.finish(cell.theta);
    row.mm1 = mm1.finish(cell.theta);
    row.mm2 = mm2.finish(cell.theta);
    return row;
}

double m_star(const MetricsRow& row) {
    return static_cast<double>(row.n) * row.ml.mse;
}

double relative_difference(const MetricsRow& row, double inv_i) {
    const double ms = m_star(row);
    if (!(ms > 0.0)) throw Error("relative_difference: m_star must be positive");
    return (ms - inv_i) / ms;
}

std::vector<MetricsRow> run_grid(const std::vector<SimulationCell>& cells,
                                 unsigned parallelism) {
    if (cells.empty()) throw Error("run_grid: empty grid");
    for (const SimulationCell& c : cells) {
        if (c.n < 2 || c.replications < 1) throw Error("run_grid: invalid cell");
        if (c.theta != 0.0) (void)AssociationParameter(c.theta);  // range check
    }
    std::vector<MetricsRow> rows(cells.size());
    unsigned p = parallelism == 0 ? 1u : parallelism;
    p = static_cast<unsigned>(
        std::min<std::size_t>(p, cells.size()));
    if (p <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(cells[i]);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(p);
    for (unsigned w = 0; w < p; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cells.size();
                 i = next.fetch_add(1))
                rows[i] = run_cell(cells[i]);
        });
    for (std::thread& t : pool) t.join();
    return rows;
}

}  // namespace frankfit
