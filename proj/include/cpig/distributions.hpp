#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cpig {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Upper tail mass left out when an unbounded support is truncated.
inline constexpr double kTailMass = 1e-10;

struct SupportInterval {
    double lower;
    double upper;

    bool bounded() const noexcept { return lower > -kInf && upper < kInf; }
    double width() const noexcept { return upper - lower; }
};

struct Uniform {
    double a;
    double b;
    bool operator==(const Uniform&) const = default;
};

struct Exponential {
    double rate;
    bool operator==(const Exponential&) const = default;
};

/// F(x) = x^c on [0, 1].
struct Power {
    double exponent;
    bool operator==(const Power&) const = default;
};

struct PiecewiseLinearCdf {
    std::vector<double> x;
    std::vector<double> p;
    bool operator==(const PiecewiseLinearCdf&) const = default;
};

struct EmpiricalStep {
    std::vector<double> sorted;
    bool operator==(const EmpiricalStep&) const = default;
};

/// Nonnegative weights summing to one (within 1e-12).
class MixWeights {
public:
    explicit MixWeights(std::vector<double> weights);

    std::span<const double> values() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    bool operator==(const MixWeights&) const = default;

private:
    std::vector<double> weights_;
};

class DistributionSpec;

struct Mixture {
    std::shared_ptr<const std::vector<DistributionSpec>> components;
    MixWeights weights;
    bool operator==(const Mixture& other) const;
};

/// An immutable distribution with evaluable CDF, survival function, density
/// (where one exists) and quantile. Cheap to copy.
class DistributionSpec {
public:
    using Variant =
        std::variant<Uniform, Exponential, Power, PiecewiseLinearCdf, EmpiricalStep, Mixture>;

    static DistributionSpec uniform(double a, double b);
    static DistributionSpec exponential(double rate);
    static DistributionSpec power(double exponent);
    static DistributionSpec mixture(std::vector<DistributionSpec> components, MixWeights weights);

    const Variant& variant() const noexcept { return v_; }

    double cdf(double x) const;
    /// 1 - F(x), computed without cancellation for the parametric families.
    double survival(double x) const;
    /// Throws NoDensity for step CDFs (and mixtures containing one).
    double pdf(double x) const;
    /// Generalized inverse inf{x : F(x) >= p}; p must lie in (0, 1).
    double quantile(double p) const;

    bool has_density() const noexcept;
    SupportInterval support() const;

    /// Interior points of the support where F is not smooth (knots, atoms,
    /// component endpoints). Sorted and unique.
    std::vector<double> breakpoints() const;

    /// Upper support endpoint, or F^{-1}(1 - kTailMass) when it is infinite.
    double truncation_point() const;

    /// Textual form, e.g. "uniform:0,1".
    std::string describe() const;

    bool operator==(const DistributionSpec& other) const { return v_ == other.v_; }

private:
    explicit DistributionSpec(Variant v) : v_(std::move(v)) {}

    friend DistributionSpec make_piecewise_cdf(std::span<const std::pair<double, double>> knots);
    friend DistributionSpec empirical_cdf_spec(std::span<const double> sample);

    Variant v_;
};

/// Validates the knots (strictly increasing x, nondecreasing p, p from 0 to 1).
/// Throws InvalidKnotsError naming the first offending index.
DistributionSpec make_piecewise_cdf(std::span<const std::pair<double, double>> knots);

/// Step CDF i/n on [X_(i), X_(i+1)). Throws EmptySample.
DistributionSpec empirical_cdf_spec(std::span<const double> sample);

/// Translates the distribution by c. Supported for uniform, piecewise,
/// empirical and mixtures of those; other families throw Domain.
DistributionSpec shift_location(const DistributionSpec& spec, double c);

/// Deterministic 64-bit stream key for (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform draw in (0, 1) determined solely by (seed, index).
double uniform_draw(std::uint64_t seed, std::uint64_t index) noexcept;

/// Inverse-transform sample; draw i depends only on (seed, i).
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Caller-supplied increasing map with its derivative.
struct MonotoneTransform {
    std::function<double(double)> forward;
    std::function<double(double)> derivative;

    /// Throws NonMonotone if the derivative is not positive, or the map not
    /// increasing, at `probes` cell midpoints of [lo, hi].
    void check_on(double lo, double hi, std::size_t probes = 64) const;
};

}  // namespace cpig
