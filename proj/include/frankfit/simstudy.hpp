#pragma once

#include <cstddef>
#include <vector>

#include "frankfit/types.hpp"

namespace frankfit {

// One Monte Carlo cell: L replications of size-n samples at a fixed theta.
// Replication l draws from stream (seed.stream_id << 32) | l, so distinct
// cells should carry distinct stream ids below 2^32.
struct SimulationCell {
    std::size_t n = 0;
    double theta = 0.0;
    std::size_t replications = 0;
    SeedSpec seed;
};

struct MethodMetrics {
    double bias = 0.0;
    double mse = 0.0;
    double rbias = 0.0;    // bias / |theta|
    double rmse = 0.0;     // mse / theta^2
    double se_bias = 0.0;  // sqrt((mse - bias^2) / L)
    double se_mse = 0.0;   // sd of squared errors / sqrt(L)
    std::size_t failures = 0;
    double max_residual = 0.0;  // worst accepted solver residual in the cell
};

struct MetricsRow {
    std::size_t n = 0;
    double theta = 0.0;
    std::size_t replications = 0;
    MethodMetrics ml;
    MethodMetrics mm1;
    MethodMetrics mm2;
};

// Runs one cell: every replication draws a fresh sample and feeds the SAME
// sample to all three estimators; errors e = theta_hat - theta are
// aggregated in replication order with compensated sums, so the result is
// a pure function of the cell. Solver failures are counted per method and
// excluded from that method's aggregates.
MetricsRow run_cell(const SimulationCell& cell);

// n * MSE of the ML estimate, the finite-n counterpart of 1/I(theta).
double m_star(const MetricsRow& row);

// (m_star - inv_i) / m_star: the fraction of the finite-n MSE not explained
// by the large-sample bound.
double relative_difference(const MetricsRow& row, double inv_i);

// Runs cells across `parallelism` threads; rows come back in input order
// and are bitwise independent of the thread count.
std::vector<MetricsRow> run_grid(const std::vector<SimulationCell>& cells,
                                 unsigned parallelism);

}  // namespace frankfit
