#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frankfit/estimators.hpp"
#include "frankfit/fisher.hpp"
#include "frankfit/simstudy.hpp"
#include "frankfit/types.hpp"

namespace frankfit {
namespace csvio {

// All numeric output uses 17 significant digits so files round-trip to the
// exact double and reruns diff clean.
std::string fmt(double x);

// `# key = value` echo lines placed before every header row.
using ConfigEcho = std::vector<std::string>;

void write_sample(std::ostream& os, const BivariateSample& s,
                  const ConfigEcho& config);

void write_metrics(std::ostream& os, const std::vector<MetricsRow>& rows,
                   const ConfigEcho& config);

struct RdRow {
    std::size_t n = 0;
    double theta = 0.0;
    double m_star = 0.0;
    double inv_i = 0.0;
    double rd = 0.0;
};

void write_rd(std::ostream& os, const std::vector<RdRow>& rows,
              const ConfigEcho& config);

void write_fisher(std::ostream& os, const std::vector<FisherResult>& rows,
                  const ConfigEcho& config);

struct ScanRow {
    double theta = 0.0;
    double value = 0.0;
};

void write_scan(std::ostream& os, const std::vector<ScanRow>& rows,
                const ConfigEcho& config);

// Reads a two-column numeric CSV: `#` comments, blank lines and one leading
// non-numeric header line are skipped; anything else malformed throws Error.
RawBivariateData read_pairs(std::istream& is);

}  // namespace csvio
}  // namespace frankfit
