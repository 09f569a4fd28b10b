#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frankfit/copula.hpp"
#include "frankfit/csv.hpp"
#include "frankfit/estimators.hpp"
#include "frankfit/fisher.hpp"
#include "frankfit/sampler.hpp"
#include "frankfit/simstudy.hpp"

namespace {

using namespace frankfit;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEstimation = 3;

// Output sink: "-" is stdout, anything else a fresh file.
struct Sink {
    std::ofstream file;
    std::ostream* os = nullptr;

    bool open(const std::string& path) {
        if (path == "-") {
            os = &std::cout;
            return true;
        }
        file.open(path);
        if (!file) return false;
        os = &file;
        return true;
    }

    bool ok() const { return os != nullptr && os->good(); }
};

AssociationParameter make_theta(double value) {
    return value == 0.0 ? AssociationParameter::independence()
                        : AssociationParameter(value);
}

std::string kv(const std::string& key, const std::string& value) {
    return key + " = " + value;
}

std::string kv(const std::string& key, double value) {
    return kv(key, csvio::fmt(value));
}

std::string kv(const std::string& key, std::uint64_t value) {
    return kv(key, std::to_string(value));
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

int run_generate(double theta, std::uint64_t n, std::uint64_t seed,
                 const std::string& out) {
    Sink sink;
    if (!sink.open(out)) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return kExitIo;
    }
    BivariateSample s = sample_n(make_theta(theta), n, SeedSpec{seed, 0});
    csvio::ConfigEcho cfg{kv("command", "generate"), kv("theta", theta),
                          kv("n", n), kv("seed", seed), kv("out", out)};
    csvio::write_sample(*sink.os, s, cfg);
    sink.os->flush();
    if (!sink.ok()) {
        std::cerr << "error: write failure on " << out << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int load_sample(const std::string& in, const std::string& pseudo,
                BivariateSample& out) {
    std::ifstream file;
    std::istream* is = &std::cin;
    if (in != "-") {
        file.open(in);
        if (!file) {
            std::cerr << "error: cannot open input file " << in << "\n";
            return kExitIo;
        }
        is = &file;
    }
    RawBivariateData raw;
    try {
        raw = csvio::read_pairs(*is);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (pseudo == "none") {
            if (raw.x1.size() < 2) throw Error("need at least 2 rows");
            BivariateSample s;
            for (std::size_t j = 0; j < raw.x1.size(); ++j)
                s.push_back(UnitPair{raw.x1[j], raw.x2[j]});
            out = s;
        } else {
            out = pseudo_observations(
                raw, pseudo == "raw" ? PseudoMode::Raw : PseudoMode::Adjusted);
        }
    } catch (const BoundaryValue&) {
        std::cerr << "error: coordinates not strictly inside (0,1); "
                     "use --pseudo adjusted for rank transformation\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_estimate(const std::string& in, const std::string& pseudo,
                 const std::vector<std::string>& methods, double tol,
                 const std::string& out) {
    BivariateSample s;
    int rc = load_sample(in, pseudo, s);
    if (rc != kExitOk) return rc;

    Sink sink;
    if (!sink.open(out)) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return kExitIo;
    }
    csvio::ConfigEcho cfg{kv("command", "estimate"), kv("in", in),
                          kv("pseudo", pseudo), kv("methods", join(methods, ',')),
                          kv("tol", tol)};
    for (const std::string& line : cfg) *sink.os << "# " << line << "\n";
    *sink.os << "method,theta_hat,residual,iterations,flags\n";

    bool estimation_failure = false;
    for (const std::string& name : methods) {
        EstimateResult r;
        std::vector<std::string> flags;
        bool ok = true;
        try {
            if (name == "ml")
                r = mle_estimate(s, tol);
            else if (name == "mm1")
                r = mme_tau_estimate(s, tol);
            else
                r = mme_rho_estimate(s, tol);
        } catch (const NoBracket& e) {
            ok = false;
            r.theta_hat = e.boundary_estimate;
            flags.push_back("no_bracket");
        } catch (const MomentOutOfRange& e) {
            ok = false;
            r.theta_hat = e.boundary_estimate;
            flags.push_back("moment_out_of_range");
        } catch (const DegenerateSample&) {
            ok = false;
            r.theta_hat = std::numeric_limits<double>::quiet_NaN();
            flags.push_back("degenerate_sample");
        }
        if (!ok) {
            estimation_failure = true;
            r.residual = std::numeric_limits<double>::quiet_NaN();
            r.iterations = 0;
        }
        if (r.independence_flag) flags.push_back("independence");
        if (r.multiplicity_warning) flags.push_back("multiplicity");
        *sink.os << name << ',' << csvio::fmt(r.theta_hat) << ','
                 << csvio::fmt(r.residual) << ',' << r.iterations << ','
                 << join(flags, ';') << "\n";
    }
    sink.os->flush();
    if (!sink.ok()) {
        std::cerr << "error: write failure on " << out << "\n";
        return kExitIo;
    }
    return estimation_failure ? kExitEstimation : kExitOk;
}

int run_simulate(const std::vector<std::uint64_t>& ns,
                 const std::vector<double>& thetas, std::uint64_t L,
                 std::uint64_t seed, unsigned parallelism,
                 const std::string& out, bool with_rd,
                 const std::string& rd_out) {
    std::vector<SimulationCell> cells;
    std::uint64_t idx = 0;
    for (std::uint64_t n : ns)
        for (double theta : thetas) {
            SimulationCell c;
            c.n = n;
            c.theta = theta;
            c.replications = L;
            c.seed = SeedSpec{seed, idx++};
            cells.push_back(c);
        }
    std::vector<MetricsRow> rows = run_grid(cells, parallelism);

    std::vector<std::string> ns_s, th_s;
    for (std::uint64_t n : ns) ns_s.push_back(std::to_string(n));
    for (double t : thetas) th_s.push_back(csvio::fmt(t));
    csvio::ConfigEcho cfg{kv("command", "simulate"),
                          kv("n", join(ns_s, ',')),
                          kv("theta", join(th_s, ',')),
                          kv("L", L),
                          kv("seed", seed),
                          kv("parallelism", std::uint64_t{parallelism}),
                          kv("out", out)};
    if (with_rd) cfg.push_back(kv("rd_out", rd_out));

    Sink sink;
    if (!sink.open(out)) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return kExitIo;
    }
    csvio::write_metrics(*sink.os, rows, cfg);
    sink.os->flush();
    if (!sink.ok()) {
        std::cerr << "error: write failure on " << out << "\n";
        return kExitIo;
    }

    if (with_rd) {
        std::map<double, double> inv_i_cache;
        std::vector<csvio::RdRow> rd_rows;
        for (const MetricsRow& row : rows) {
            auto it = inv_i_cache.find(row.theta);
            if (it == inv_i_cache.end())
                it = inv_i_cache.emplace(row.theta, asymptotic_variance(row.theta))
                         .first;
            csvio::RdRow rd;
            rd.n = row.n;
            rd.theta = row.theta;
            rd.m_star = m_star(row);
            rd.inv_i = it->second;
            rd.rd = relative_difference(row, it->second);
            rd_rows.push_back(rd);
        }
        Sink rd_sink;
        if (!rd_sink.open(rd_out)) {
            std::cerr << "error: cannot open output file " << rd_out << "\n";
            return kExitIo;
        }
        csvio::write_rd(*rd_sink.os, rd_rows, cfg);
        rd_sink.os->flush();
        if (!rd_sink.ok()) {
            std::cerr << "error: write failure on " << rd_out << "\n";
            return kExitIo;
        }
    }
    return kExitOk;
}

int run_fisher(const std::vector<double>& thetas, const std::string& method,
               std::uint64_t M, std::uint64_t seed, const std::string& out) {
    std::vector<FisherResult> rows;
    std::uint64_t idx = 0;
    for (double theta : thetas) {
        if (method == "mc") {
            if (theta == 0.0) {
                std::cerr << "error: --method mc needs nonzero theta\n";
                return kExitUsage;
            }
            rows.push_back(i2_monte_carlo(theta, M, SeedSpec{seed, idx}));
        } else {
            rows.push_back(fisher_information(theta));
        }
        ++idx;
    }
    std::vector<std::string> th_s;
    for (double t : thetas) th_s.push_back(csvio::fmt(t));
    csvio::ConfigEcho cfg{kv("command", "fisher"), kv("theta", join(th_s, ',')),
                          kv("method", method), kv("M", M), kv("seed", seed),
                          kv("out", out)};
    Sink sink;
    if (!sink.open(out)) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return kExitIo;
    }
    csvio::write_fisher(*sink.os, rows, cfg);
    sink.os->flush();
    if (!sink.ok()) {
        std::cerr << "error: write failure on " << out << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_scan(const std::string& in, const std::string& pseudo,
             const std::string& what, double from, double to, double step,
             bool include_origin, const std::string& out) {
    if (!(step > 0.0) || from >= to || step > to - from) {
        std::cerr << "error: malformed range (need from < to, 0 < step <= to-from)\n";
        return kExitUsage;
    }
    if (from < -kThetaMax || to > kThetaMax) {
        std::cerr << "error: range must stay inside [-700, 700]\n";
        return kExitUsage;
    }
    BivariateSample s;
    int rc = load_sample(in, pseudo, s);
    if (rc != kExitOk) return rc;

    std::vector<csvio::ScanRow> rows;
    const auto count =
        static_cast<std::uint64_t>(std::floor((to - from) / step + 1e-9));
    for (std::uint64_t k = 0; k <= count; ++k) {
        double theta = from + static_cast<double>(k) * step;
        if (!include_origin && std::fabs(theta) < 0.01) continue;
        csvio::ScanRow row;
        row.theta = theta;
        if (what == "loglik")
            row.value = log_likelihood(s, make_theta(theta));
        else
            row.value = theta == 0.0 ? h_at_zero_limit(s) : h_of_theta(s, theta);
        rows.push_back(row);
    }
    csvio::ConfigEcho cfg{kv("command", "scan"),
                          kv("in", in),
                          kv("pseudo", pseudo),
                          kv("what", what),
                          kv("from", from),
                          kv("to", to),
                          kv("step", step),
                          kv("include_origin", include_origin ? "true" : "false")};
    Sink sink;
    if (!sink.open(out)) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return kExitIo;
    }
    csvio::write_scan(*sink.os, rows, cfg);
    sink.os->flush();
    if (!sink.ok()) {
        std::cerr << "error: write failure on " << out << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frank copula toolkit: sampling, estimation and Monte Carlo study"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");
    app.set_version_flag("--version", "frankfit 1.0.0");

    // generate
    auto* gen = app.add_subcommand("generate", "Draw a sample and write u1,u2 CSV");
    double g_theta = 0.0;
    std::uint64_t g_n = 0, g_seed = 0;
    std::string g_out = "-";
    gen->add_option("--theta", g_theta, "Association parameter in [-700, 700]")
        ->required()
        ->check(CLI::Range(-kThetaMax, kThetaMax));
    gen->add_option("--n", g_n, "Number of pairs")->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", g_seed, "Base seed")->envname("FRANKFIT_SEED");
    gen->add_option("--out", g_out, "Output path or - for stdout");

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate theta from a CSV dataset");
    std::string e_in, e_pseudo = "none", e_out = "-";
    std::vector<std::string> e_methods{"ml", "mm1", "mm2"};
    double e_tol = 1e-8;
    est->add_option("--in", e_in, "Input CSV (two numeric columns, - for stdin)")
        ->required();
    est->add_option("--pseudo", e_pseudo,
                    "none: data already in (0,1); raw/adjusted: rank transform")
        ->check(CLI::IsMember({"none", "raw", "adjusted"}));
    est->add_option("--methods", e_methods, "Subset of ml,mm1,mm2")
        ->delimiter(',')
        ->check(CLI::IsMember({"ml", "mm1", "mm2"}));
    est->add_option("--tol", e_tol, "Solver tolerance")->check(CLI::PositiveNumber);
    est->add_option("--out", e_out, "Output path or - for stdout");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo bias/MSE grid");
    std::vector<std::uint64_t> s_ns;
    std::vector<double> s_thetas;
    std::uint64_t s_L = 20000, s_seed = 0;
    unsigned s_par = 1;
    std::string s_out = "-", s_rd_out = "rd.csv";
    bool s_with_rd = false;
    sim->add_option("--n", s_ns, "Sample sizes, comma separated")
        ->required()
        ->delimiter(',');
    sim->add_option("--theta", s_thetas, "Theta values, comma separated")
        ->required()
        ->delimiter(',');
    sim->add_option("--L", s_L, "Replications per cell")->check(CLI::PositiveNumber);
    sim->add_option("--seed", s_seed, "Base seed")->envname("FRANKFIT_SEED");
    sim->add_option("--parallelism", s_par, "Worker threads across cells");
    sim->add_option("--out", s_out, "Metrics CSV path or - for stdout");
    sim->add_flag("--with-rd", s_with_rd,
                  "Also write n*MSE vs 1/I comparison CSV");
    sim->add_option("--rd-out", s_rd_out, "Path for the RD CSV");

    // fisher
    auto* fis = app.add_subcommand("fisher", "Information I(theta) table");
    std::vector<double> f_thetas;
    std::string f_method = "quadrature", f_out = "-";
    std::uint64_t f_M = 1000000, f_seed = 0;
    fis->add_option("--theta", f_thetas, "Theta values, comma separated")
        ->required()
        ->delimiter(',');
    fis->add_option("--method", f_method, "quadrature or mc")
        ->check(CLI::IsMember({"quadrature", "mc"}));
    fis->add_option("--M", f_M, "Monte Carlo draws (mc method)")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1000000000}));
    fis->add_option("--seed", f_seed, "Base seed")->envname("FRANKFIT_SEED");
    fis->add_option("--out", f_out, "Output path or - for stdout");

    // scan
    auto* scn = app.add_subcommand("scan", "Curve of loglik or H over a theta grid");
    std::string c_in, c_pseudo = "none", c_what, c_out = "-";
    double c_from = -10.0, c_to = 10.0, c_step = 0.1;
    bool c_origin = false;
    scn->add_option("--in", c_in, "Input CSV (two numeric columns, - for stdin)")
        ->required();
    scn->add_option("--pseudo", c_pseudo,
                    "none: data already in (0,1); raw/adjusted: rank transform")
        ->check(CLI::IsMember({"none", "raw", "adjusted"}));
    scn->add_option("--what", c_what, "loglik or h")
        ->required()
        ->check(CLI::IsMember({"loglik", "h"}));
    scn->add_option("--from", c_from, "Grid start");
    scn->add_option("--to", c_to, "Grid end");
    scn->add_option("--step", c_step, "Grid step");
    scn->add_flag("--include-origin", c_origin,
                  "Keep grid points with |theta| < 0.01 (limit values at 0)");
    scn->add_option("--out", c_out, "Output path or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return run_generate(g_theta, g_n, g_seed, g_out);
        if (*est) return run_estimate(e_in, e_pseudo, e_methods, e_tol, e_out);
        if (*sim)
            return run_simulate(s_ns, s_thetas, s_L, s_seed, s_par, s_out,
                                s_with_rd, s_rd_out);
        if (*fis) return run_fisher(f_thetas, f_method, f_M, f_seed, f_out);
        if (*scn)
            return run_scan(c_in, c_pseudo, c_what, c_from, c_to, c_step,
                            c_origin, c_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
