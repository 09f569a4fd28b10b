#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frankfit {

// Search/evaluation range for the association parameter. Beyond ~700 the
// factored exponential forms still hold but e^|theta| leaves double range,
// so estimators clamp to this box.
inline constexpr double kThetaMax = 700.0;

// Below this magnitude the closed forms lose too many digits to cancellation
// and evaluation switches to second-order expansions around 0.
inline constexpr double kSmallTheta = 1e-4;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryValue : Error {
    using Error::Error;
};

struct OverflowGuard : Error {
    using Error::Error;
};

struct QuadratureNotConverged : Error {
    using Error::Error;
};

struct DegenerateSample : Error {
    using Error::Error;
};

// Root search ran to the edge of [-kThetaMax, kThetaMax] without a sign
// change; boundary_estimate is the clamped endpoint.
struct NoBracket : Error {
    double boundary_estimate;
    NoBracket(const std::string& msg, double boundary)
        : Error(msg), boundary_estimate(boundary) {}
};

// Sample concordance exceeds what the model can produce inside the theta box.
struct MomentOutOfRange : Error {
    double boundary_estimate;
    MomentOutOfRange(const std::string& msg, double boundary)
        : Error(msg), boundary_estimate(boundary) {}
};

class AssociationParameter {
  public:
    explicit AssociationParameter(double value)
        : value_(value), independence_(false) {
        if (value == 0.0)
            throw std::invalid_argument(
                "theta = 0 must be constructed via independence()");
        if (!(value >= -kThetaMax && value <= kThetaMax))
            throw std::invalid_argument("theta outside [-700, 700]");
    }

    static AssociationParameter independence() {
        AssociationParameter p;
        return p;
    }

    double value() const { return value_; }
    bool is_independence_limit() const { return independence_; }

  private:
    AssociationParameter() : value_(0.0), independence_(true) {}
    double value_;
    bool independence_;
};

struct UnitPair {
    double u1;
    double u2;

    UnitPair(double a, double b) : u1(a), u2(b) {
        if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
            throw BoundaryValue("pair coordinates must lie strictly in (0,1)");
    }
};

class BivariateSample {
  public:
    BivariateSample() = default;
    explicit BivariateSample(std::vector<UnitPair> pairs)
        : pairs_(std::move(pairs)) {}

    const std::vector<UnitPair>& pairs() const { return pairs_; }
    std::size_t n() const { return pairs_.size(); }

    void push_back(UnitPair p) { pairs_.push_back(p); }

  private:
    std::vector<UnitPair> pairs_;
};

// (base_seed, stream_id) selects one deterministic variate stream; distinct
// stream ids are used for replications so they can run in any order.
struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_id = 0;
};

}  // namespace frankfit
