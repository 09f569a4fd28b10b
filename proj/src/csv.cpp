#include "frankfit/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace frankfit {
namespace csvio {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

namespace {

void echo(std::ostream& os, const ConfigEcho& config) {
    for (const std::string& line : config) os << "# " << line << "\n";
}

}  // namespace

void write_sample(std::ostream& os, const BivariateSample& s,
                  const ConfigEcho& config) {
    echo(os, config);
    os << "u1,u2\n";
    for (const UnitPair& p : s.pairs())
        os << fmt(p.u1) << ',' << fmt(p.u2) << "\n";
}

void write_metrics(std::ostream& os, const std::vector<MetricsRow>& rows,
                   const ConfigEcho& config) {
    echo(os, config);
    os << "n,theta,L,bias_ml,bias_mm1,bias_mm2,mse_ml,mse_mm1,mse_mm2,"
          "rbias_ml,rbias_mm1,rbias_mm2,rmse_ml,rmse_mm1,rmse_mm2,"
          "se_bias_ml,se_bias_mm1,se_bias_mm2,se_mse_ml,se_mse_mm1,se_mse_mm2,"
          "failures_ml,failures_mm1,failures_mm2\n";
    for (const MetricsRow& r : rows) {
        os << r.n << ',' << fmt(r.theta) << ',' << r.replications;
        const MethodMetrics* m[3] = {&r.ml, &r.mm1, &r.mm2};
        for (auto* x : m) os << ',' << fmt(x->bias);
        for (auto* x : m) os << ',' << fmt(x->mse);
        for (auto* x : m) os << ',' << fmt(x->rbias);
        for (auto* x : m) os << ',' << fmt(x->rmse);
        for (auto* x : m) os << ',' << fmt(x->se_bias);
        for (auto* x : m) os << ',' << fmt(x->se_mse);
        for (auto* x : m) os << ',' << x->failures;
        os << "\n";
    }
}

void write_rd(std::ostream& os, const std::vector<RdRow>& rows,
              const ConfigEcho& config) {
    echo(os, config);
    os << "n,theta,m_star,inv_i,rd\n";
    for (const RdRow& r : rows)
        os << r.n << ',' << fmt(r.theta) << ',' << fmt(r.m_star) << ','
           << fmt(r.inv_i) << ',' << fmt(r.rd) << "\n";
}

void write_fisher(std::ostream& os, const std::vector<FisherResult>& rows,
                  const ConfigEcho& config) {
    echo(os, config);
    os << "theta,i1,i2,i_total,inv_i,method,mc_se\n";
    for (const FisherResult& r : rows)
        os << fmt(r.theta) << ',' << fmt(r.i1) << ',' << fmt(r.i2) << ','
           << fmt(r.i_total) << ',' << fmt(1.0 / r.i_total) << ','
           << fisher_method_name(r.method) << ',' << fmt(r.mc_standard_error)
           << "\n";
}

void write_scan(std::ostream& os, const std::vector<ScanRow>& rows,
                const ConfigEcho& config) {
    echo(os, config);
    os << "theta,value\n";
    for (const ScanRow& r : rows)
        os << fmt(r.theta) << ',' << fmt(r.value) << "\n";
}

namespace {

bool parse_two(const std::string& line, double& a, double& b) {
    const char* p = line.c_str();
    char* end = nullptr;
    a = std::strtod(p, &end);
    if (end == p) return false;
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != ',' && *end != ' ' && *end != '\t' && *end != ';') return false;
    const char* q = end + 1;
    b = std::strtod(q, &end);
    if (end == q) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

}  // namespace

RawBivariateData read_pairs(std::istream& is) {
    RawBivariateData data;
    std::string line;
    bool first_content = true;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        double a, b;
        if (!parse_two(line.substr(start), a, b)) {
            if (first_content) {  // tolerate one header row
                first_content = false;
                continue;
            }
            throw Error("read_pairs: malformed line " + std::to_string(lineno));
        }
        first_content = false;
        data.x1.push_back(a);
        data.x2.push_back(b);
    }
    if (data.x1.empty()) throw Error("read_pairs: no data rows");
    return data;
}

}  // namespace csvio
}  // namespace frankfit
