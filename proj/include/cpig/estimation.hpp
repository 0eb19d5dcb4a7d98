#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "cpig/distributions.hpp"
#include "cpig/measures.hpp"

namespace cpig {

enum class SamplingModel { Exponential, Uniform01 };

/// Exact moments of the empirical CPIG estimator under a sampling model.
/// variance_paper is the published formula evaluated verbatim;
/// variance_corrected squares the spacing weights (independent exponential
/// spacings). For the uniform model no independent-sum correction exists,
/// so the two are equal and `caveat` is set.
struct EstimatorMoments {
    double mean = 0.0;
    double variance_paper = 0.0;
    double variance_corrected = 0.0;
    std::size_t n = 0;
    double theta = 0.0;
    SamplingModel model = SamplingModel::Exponential;
    double rate = 1.0;
    bool caveat = false;
};

struct SimulatedMoments {
    double mean = 0.0;
    double mean_se = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
};

struct CltReport {
    std::size_t replicates = 0;
    double ks_distance = 0.0;
    double standardized_mean = 0.0;
    double standardized_variance = 0.0;
    std::uint64_t seed = 0;
};

/// Sum over i = 1..n-1 of (X_(i+1) - X_(i)) (i/n)^theta. Sorts a copy;
/// returns 0 for a single observation. Throws EmptySample.
double empirical_cpig(std::span<const double> sample, Theta theta);

EstimatorMoments estimator_moments_exponential(std::size_t n, double rate, Theta theta);
EstimatorMoments estimator_moments_uniform(std::size_t n, Theta theta);

/// Monte Carlo mean/variance of empirical_cpig over seeded replicates of
/// size n drawn from `model`; replicate r uses stream derive_seed(seed, r).
SimulatedMoments simulate_estimator(const DistributionSpec& model, std::size_t n, Theta theta,
                                    std::size_t replicates, std::uint64_t seed);

/// Standardizes replicate estimates by the exact exponential mean and
/// corrected variance and reports the KS distance to N(0, 1). Only
/// exponential models are supported; replicates must be >= 100.
CltReport clt_experiment(const DistributionSpec& model, std::size_t n, Theta theta, std::size_t replicates,
                         std::uint64_t seed);

/// Two-sided KS statistic of a sample against the standard normal CDF.
double ks_distance_normal(std::span<const double> values);

}  // namespace cpig
