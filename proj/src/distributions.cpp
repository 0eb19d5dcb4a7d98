#include "cpig/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpig/error.hpp"

namespace cpig {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Index j >= 1 of the segment [x[j-1], x[j]) holding x; requires x[0] <= t < x.back().
std::size_t segment_of(const std::vector<double>& xs, double t) {
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    return static_cast<std::size_t>(it - xs.begin());
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double mixture_quantile(const DistributionSpec& spec, double p) {
    SupportInterval s = spec.support();
    double lo = s.lower;
    double hi = s.upper;
    if (!(hi < kInf)) {
        hi = std::max(lo + 1.0, spec.truncation_point());
        while (spec.cdf(hi) < p) hi = lo + 2.0 * (hi - lo);
    }
    // Invariant: F(lo) < p <= F(hi) (F(lower) may equal 0 < p).
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (spec.cdf(mid) >= p)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

MixWeights::MixWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorKind::InvalidWeights, "no weights given");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw Error(ErrorKind::InvalidWeights, "weights must be finite and nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidWeights, "weights sum to " + fmt_num(total) + ", not 1");
}

bool Mixture::operator==(const Mixture& other) const {
    return weights == other.weights && *components == *other.components;
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw Error(ErrorKind::Domain, "uniform requires finite a < b");
    return DistributionSpec(Uniform{a, b});
}

DistributionSpec DistributionSpec::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw Error(ErrorKind::Domain, "exponential rate must be positive");
    return DistributionSpec(Exponential{rate});
}

DistributionSpec DistributionSpec::power(double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw Error(ErrorKind::Domain, "power exponent must be positive");
    return DistributionSpec(Power{exponent});
}

DistributionSpec DistributionSpec::mixture(std::vector<DistributionSpec> components,
                                           MixWeights weights) {
    if (components.empty()) throw Error(ErrorKind::InvalidWeights, "mixture has no components");
    if (components.size() != weights.size())
        throw Error(ErrorKind::InvalidWeights, "component and weight counts differ");
    return DistributionSpec(Mixture{
        std::make_shared<const std::vector<DistributionSpec>>(std::move(components)),
        std::move(weights)});
}

DistributionSpec make_piecewise_cdf(std::span<const std::pair<double, double>> knots) {
    if (knots.size() < 2) throw InvalidKnotsError(knots.size(), "at least two knots required");
    PiecewiseLinearCdf pw;
    pw.x.reserve(knots.size());
    pw.p.reserve(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) {
        auto [x, p] = knots[i];
        if (!std::isfinite(x) || !std::isfinite(p)) throw InvalidKnotsError(i, "non-finite value");
        if (i == 0 && p != 0.0) throw InvalidKnotsError(i, "first probability must be 0");
        if (i > 0 && !(x > pw.x.back())) throw InvalidKnotsError(i, "x not strictly increasing");
        if (i > 0 && p < pw.p.back()) throw InvalidKnotsError(i, "probability decreases");
        if (p < 0.0 || p > 1.0) throw InvalidKnotsError(i, "probability outside [0, 1]");
        pw.x.push_back(x);
        pw.p.push_back(p);
    }
    if (pw.p.back() != 1.0)
        throw InvalidKnotsError(knots.size() - 1, "last probability must be 1");
    return DistributionSpec(std::move(pw));
}

DistributionSpec empirical_cdf_spec(std::span<const double> sample) {
    if (sample.empty()) throw Error(ErrorKind::EmptySample, "empirical CDF needs a sample");
    EmpiricalStep e{std::vector<double>(sample.begin(), sample.end())};
    for (double v : e.sorted)
        if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "sample contains non-finite value");
    std::sort(e.sorted.begin(), e.sorted.end());
    return DistributionSpec(std::move(e));
}

double DistributionSpec::cdf(double x) const {
    return std::visit(
        overloaded{
            [x](const Uniform& u) {
                if (x <= u.a) return 0.0;
                if (x >= u.b) return 1.0;
                return (x - u.a) / (u.b - u.a);
            },
            [x](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
            [x](const Power& pw) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return std::pow(x, pw.exponent);
            },
            [x](const PiecewiseLinearCdf& pw) {
                if (x < pw.x.front()) return 0.0;
                if (x >= pw.x.back()) return 1.0;
                std::size_t j = segment_of(pw.x, x);
                double t = (x - pw.x[j - 1]) / (pw.x[j] - pw.x[j - 1]);
                return pw.p[j - 1] + t * (pw.p[j] - pw.p[j - 1]);
            },
            [x](const EmpiricalStep& e) {
                auto it = std::upper_bound(e.sorted.begin(), e.sorted.end(), x);
                return static_cast<double>(it - e.sorted.begin()) /
                       static_cast<double>(e.sorted.size());
            },
            [x](const Mixture& m) {
                double acc = 0.0;
                for (std::size_t i = 0; i < m.weights.size(); ++i)
                    acc += m.weights[i] * (*m.components)[i].cdf(x);
                return std::min(acc, 1.0);
            },
        },
        v_);
}

double DistributionSpec::survival(double x) const {
    return std::visit(
        overloaded{
            [x](const Exponential& e) { return x <= 0.0 ? 1.0 : std::exp(-e.rate * x); },
            [x](const Power& pw) {
                if (x <= 0.0) return 1.0;
                if (x >= 1.0) return 0.0;
                return -std::expm1(pw.exponent * std::log(x));
            },
            [x](const Mixture& m) {
                double acc = 0.0;
                for (std::size_t i = 0; i < m.weights.size(); ++i)
                    acc += m.weights[i] * (*m.components)[i].survival(x);
                return std::min(acc, 1.0);
            },
            [this, x](const auto&) { return 1.0 - cdf(x); },
        },
        v_);
}

double DistributionSpec::pdf(double x) const {
    return std::visit(
        overloaded{
            [x](const Uniform& u) { return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0; },
            [x](const Exponential& e) { return x < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * x); },
            [x](const Power& pw) {
                if (x < 0.0 || x > 1.0) return 0.0;
                if (x == 0.0) return pw.exponent == 1.0 ? 1.0 : (pw.exponent > 1.0 ? 0.0 : kInf);
                return pw.exponent * std::pow(x, pw.exponent - 1.0);
            },
            [x](const PiecewiseLinearCdf& pw) {
                if (x < pw.x.front() || x > pw.x.back()) return 0.0;
                std::size_t j = x == pw.x.back() ? pw.x.size() - 1 : segment_of(pw.x, x);
                return (pw.p[j] - pw.p[j - 1]) / (pw.x[j] - pw.x[j - 1]);
            },
            [](const EmpiricalStep&) -> double {
                throw Error(ErrorKind::NoDensity, "empirical step CDF has no density");
            },
            [x](const Mixture& m) {
                double acc = 0.0;
                for (std::size_t i = 0; i < m.weights.size(); ++i)
                    acc += m.weights[i] * (*m.components)[i].pdf(x);
                return acc;
            },
        },
        v_);
}

double DistributionSpec::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::Domain, "quantile level must lie in (0, 1)");
    return std::visit(
        overloaded{
            [p](const Uniform& u) { return u.a + p * (u.b - u.a); },
            [p](const Exponential& e) { return -std::log1p(-p) / e.rate; },
            [p](const Power& pw) { return std::pow(p, 1.0 / pw.exponent); },
            [p](const PiecewiseLinearCdf& pw) {
                auto it = std::lower_bound(pw.p.begin(), pw.p.end(), p);
                auto j = static_cast<std::size_t>(it - pw.p.begin());
                double t = (p - pw.p[j - 1]) / (pw.p[j] - pw.p[j - 1]);
                return pw.x[j - 1] + t * (pw.x[j] - pw.x[j - 1]);
            },
            [p](const EmpiricalStep& e) {
                const std::size_t n = e.sorted.size();
                const double nd = static_cast<double>(n);
                auto i = static_cast<std::size_t>(std::ceil(p * nd));
                i = std::clamp<std::size_t>(i, 1, n);
                while (i > 1 && static_cast<double>(i - 1) / nd >= p) --i;
                while (i < n && static_cast<double>(i) / nd < p) ++i;
                return e.sorted[i - 1];
            },
            [this, p](const Mixture&) { return mixture_quantile(*this, p); },
        },
        v_);
}

bool DistributionSpec::has_density() const noexcept {
    return std::visit(overloaded{
                          [](const EmpiricalStep&) { return false; },
                          [](const Mixture& m) {
                              return std::all_of(m.components->begin(), m.components->end(),
                                                 [](const auto& c) { return c.has_density(); });
                          },
                          [](const auto&) { return true; },
                      },
                      v_);
}

SupportInterval DistributionSpec::support() const {
    return std::visit(
        overloaded{
            [](const Uniform& u) { return SupportInterval{u.a, u.b}; },
            [](const Exponential&) { return SupportInterval{0.0, kInf}; },
            [](const Power&) { return SupportInterval{0.0, 1.0}; },
            [](const PiecewiseLinearCdf& pw) { return SupportInterval{pw.x.front(), pw.x.back()}; },
            [](const EmpiricalStep& e) { return SupportInterval{e.sorted.front(), e.sorted.back()}; },
            [](const Mixture& m) {
                SupportInterval s{kInf, -kInf};
                for (const auto& c : *m.components) {
                    auto cs = c.support();
                    s.lower = std::min(s.lower, cs.lower);
                    s.upper = std::max(s.upper, cs.upper);
                }
                return s;
            },
        },
        v_);
}

std::vector<double> DistributionSpec::breakpoints() const {
    std::vector<double> pts = std::visit(
        overloaded{
            [](const PiecewiseLinearCdf& pw) { return pw.x; },
            [](const EmpiricalStep& e) { return e.sorted; },
            [](const Mixture& m) {
                std::vector<double> acc;
                for (const auto& c : *m.components) {
                    auto cb = c.breakpoints();
                    acc.insert(acc.end(), cb.begin(), cb.end());
                    auto cs = c.support();
                    if (std::isfinite(cs.lower)) acc.push_back(cs.lower);
                    if (std::isfinite(cs.upper)) acc.push_back(cs.upper);
                }
                return acc;
            },
            [](const auto&) { return std::vector<double>{}; },
        },
        v_);
    const SupportInterval s = support();
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [&](double v) { return !(v > s.lower && v < s.upper); });
    return pts;
}

double DistributionSpec::truncation_point() const {
    const SupportInterval s = support();
    if (s.upper < kInf) return s.upper;
    return quantile(1.0 - kTailMass);
}

std::string DistributionSpec::describe() const {
    return std::visit(
        overloaded{
            [](const Uniform& u) { return "uniform:" + fmt_num(u.a) + "," + fmt_num(u.b); },
            [](const Exponential& e) { return "exp:" + fmt_num(e.rate); },
            [](const Power& pw) { return "power:" + fmt_num(pw.exponent); },
            [](const PiecewiseLinearCdf& pw) {
                return "pwcdf[" + std::to_string(pw.x.size()) + " knots]";
            },
            [](const EmpiricalStep& e) {
                return "sample[" + std::to_string(e.sorted.size()) + " values]";
            },
            [](const Mixture& m) {
                std::string out = "mixture(";
                for (std::size_t i = 0; i < m.weights.size(); ++i) {
                    if (i) out += ";";
                    out += fmt_num(m.weights[i]) + "*" + (*m.components)[i].describe();
                }
                return out + ")";
            },
        },
        v_);
}

DistributionSpec shift_location(const DistributionSpec& spec, double c) {
    return std::visit(
        overloaded{
            [c](const Uniform& u) { return DistributionSpec::uniform(u.a + c, u.b + c); },
            [c](const PiecewiseLinearCdf& pw) {
                std::vector<std::pair<double, double>> knots;
                knots.reserve(pw.x.size());
                for (std::size_t i = 0; i < pw.x.size(); ++i) knots.emplace_back(pw.x[i] + c, pw.p[i]);
                return make_piecewise_cdf(knots);
            },
            [c](const EmpiricalStep& e) {
                std::vector<double> v(e.sorted);
                for (double& x : v) x += c;
                return empirical_cdf_spec(v);
            },
            [c](const Mixture& m) {
                std::vector<DistributionSpec> comps;
                for (const auto& comp : *m.components) comps.push_back(shift_location(comp, c));
                return DistributionSpec::mixture(std::move(comps), m.weights);
            },
            [](const auto&) -> DistributionSpec {
                throw Error(ErrorKind::Domain, "location shift not representable for this family");
            },
        },
        spec.variant());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

double uniform_draw(std::uint64_t seed, std::uint64_t index) noexcept {
    const std::uint64_t bits = derive_seed(seed, index) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::Domain, "sample size must be at least 1");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec.quantile(uniform_draw(seed, i));
    return out;
}

void MonotoneTransform::check_on(double lo, double hi, std::size_t probes) const {
    if (!forward || !derivative) throw Error(ErrorKind::Domain, "transform functions not set");
    if (probes < 2) probes = 2;
    double prev = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        // Cell midpoints: endpoints may legitimately have a zero derivative.
        double x = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(probes);
        double d = derivative(x);
        if (!(d > 0.0))
            throw Error(ErrorKind::NonMonotone, "derivative not positive at x = " + fmt_num(x));
        double fx = forward(x);
        if (i > 0 && !(fx > prev))
            throw Error(ErrorKind::NonMonotone, "map not increasing at x = " + fmt_num(x));
        prev = fx;
    }
}

}  // namespace cpig
