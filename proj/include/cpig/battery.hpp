#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cpig/distributions.hpp"

namespace cpig {

/// Random piecewise-linear CDF: 3-20 knots, x increments in [0.05, 1] from
/// an origin in [0, 1), positive probability increments normalized to 1.
/// Supports are bounded and nonnegative.
DistributionSpec random_piecewise_cdf(std::mt19937_64& rng);

/// `count` independent random piecewise CDFs from one seed.
std::vector<DistributionSpec> piecewise_battery(std::size_t count, std::uint64_t seed);

}  // namespace cpig
