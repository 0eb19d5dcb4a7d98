#include "cpig/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cpig/error.hpp"

namespace cpig {

namespace {

double sorted_empirical_cpig(const std::vector<double>& xs, double theta) {
    const std::size_t n = xs.size();
    const double nd = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        acc += (xs[i] - xs[i - 1]) * std::pow(static_cast<double>(i) / nd, theta);
    return acc;
}

std::vector<double> replicate_estimates(const DistributionSpec& model, std::size_t n, double theta,
                                        std::size_t replicates, std::uint64_t seed) {
    std::vector<double> est(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
        std::vector<double> xs = sample(model, n, derive_seed(seed, r));
        std::sort(xs.begin(), xs.end());
        est[r] = sorted_empirical_cpig(xs, theta);
    }
    return est;
}

void require_n(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::Domain, "moment formulas need n >= 2");
}

}  // namespace

double empirical_cpig(std::span<const double> sample, Theta theta) {
    if (sample.empty()) throw Error(ErrorKind::EmptySample, "estimator needs at least one observation");
    std::vector<double> xs(sample.begin(), sample.end());
    std::sort(xs.begin(), xs.end());
    return sorted_empirical_cpig(xs, theta.value());
}

EstimatorMoments estimator_moments_exponential(std::size_t n, double rate, Theta theta) {
    require_n(n);
    if (!(rate > 0.0)) throw Error(ErrorKind::Domain, "rate must be positive");
    const double nd = static_cast<double>(n);
    const double t = theta.value();
    EstimatorMoments m;
    m.n = n;
    m.theta = t;
    m.rate = rate;
    m.model = SamplingModel::Exponential;
    // Spacing X_(i+1) - X_(i) ~ Exp(rate (n - i)), independent across i.
    for (std::size_t i = 1; i < n; ++i) {
        const double w = std::pow(static_cast<double>(i) / nd, t);
        const double k = nd - static_cast<double>(i);
        m.mean += w / k;
        m.variance_paper += w / (k * k);
        m.variance_corrected += w * w / (k * k);
    }
    m.mean /= rate;
    m.variance_paper /= rate * rate;
    m.variance_corrected /= rate * rate;
    return m;
}

EstimatorMoments estimator_moments_uniform(std::size_t n, Theta theta) {
    require_n(n);
    const double nd = static_cast<double>(n);
    const double t = theta.value();
    double weights = 0.0;
    for (std::size_t i = 1; i < n; ++i) weights += std::pow(static_cast<double>(i) / nd, t);
    EstimatorMoments m;
    m.n = n;
    m.theta = t;
    m.model = SamplingModel::Uniform01;
    m.mean = weights / (nd + 1.0);
    m.variance_paper = nd / ((nd + 1.0) * (nd + 1.0) * (nd + 2.0)) * weights;
    m.variance_corrected = m.variance_paper;
    m.caveat = true;
    return m;
}

SimulatedMoments simulate_estimator(const DistributionSpec& model, std::size_t n, Theta theta,
                                    std::size_t replicates, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::Domain, "sample size must be at least 1");
    if (replicates < 2) throw Error(ErrorKind::Domain, "need at least 2 replicates");
    const std::vector<double> est = replicate_estimates(model, n, theta.value(), replicates, seed);
    const double R = static_cast<double>(replicates);
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / R;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double e : est) {
        const double d = e - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    SimulatedMoments s;
    s.replicates = replicates;
    s.seed = seed;
    s.mean = mean;
    s.variance = m2 / (R - 1.0);
    s.mean_se = std::sqrt(s.variance / R);
    const double pop_var = m2 / R;
    s.variance_se = std::sqrt(std::max(m4 / R - pop_var * pop_var, 0.0) / R);
    return s;
}

double ks_distance_normal(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::EmptySample, "KS distance needs values");
    std::vector<double> z(values.begin(), values.end());
    std::sort(z.begin(), z.end());
    const double R = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double phi = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        d = std::max({d, static_cast<double>(i + 1) / R - phi, phi - static_cast<double>(i) / R});
    }
    return d;
}

CltReport clt_experiment(const DistributionSpec& model, std::size_t n, Theta theta, std::size_t replicates,
                         std::uint64_t seed) {
    const auto* e = std::get_if<Exponential>(&model.variant());
    if (!e) throw Error(ErrorKind::UnsupportedModel, "CLT experiment needs an exponential model");
    if (replicates < 100) throw Error(ErrorKind::Domain, "CLT experiment needs at least 100 replicates");
    const EstimatorMoments m = estimator_moments_exponential(n, e->rate, theta);
    std::vector<double> z = replicate_estimates(model, n, theta.value(), replicates, seed);
    const double sd = std::sqrt(m.variance_corrected);
    for (double& v : z) v = (v - m.mean) / sd;

    const double R = static_cast<double>(replicates);
    CltReport r;
    r.replicates = replicates;
    r.seed = seed;
    r.standardized_mean = std::accumulate(z.begin(), z.end(), 0.0) / R;
    double ss = 0.0;
    for (double v : z) ss += (v - r.standardized_mean) * (v - r.standardized_mean);
    r.standardized_variance = ss / (R - 1.0);
    r.ks_distance = ks_distance_normal(z);
    return r;
}

}  // namespace cpig
