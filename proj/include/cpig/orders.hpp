#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "cpig/bounds.hpp"
#include "cpig/distributions.hpp"
#include "cpig/measures.hpp"

namespace cpig {

inline constexpr std::size_t kDefaultOrderGrid = 2048;
inline constexpr std::size_t kDefaultConvolutionGrid = 4096;

struct OrderWitness {
    double at;  // t in (0,1), x, or theta depending on the check
    double lhs;
    double rhs;
};

struct OrderReport {
    bool holds = true;
    std::size_t checked_points = 0;
    std::optional<OrderWitness> witness;  // first violation
};

/// X <=disp Y: f_X(F_X^{-1}(t)) >= f_Y(F_Y^{-1}(t)) on a uniform t-grid in
/// (1e-4, 1 - 1e-4).
OrderReport dispersive_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                   std::size_t grid_size = kDefaultOrderGrid);

/// X <=st Y: F_X(x) >= F_Y(x) on an x-grid spanning both supports.
OrderReport stochastic_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                   std::size_t grid_size = kDefaultOrderGrid);

/// X <=CPIG Y: cpig(F, theta) <= cpig(G, theta) at every listed theta.
OrderReport cpig_order_check(const DistributionSpec& f, const DistributionSpec& g,
                             std::span<const Theta> thetas, const EvalOptions& opts = {});

/// Piecewise-linear approximation of the CDF of X + Y (independent, bounded
/// supports) from a trapezoidal Stieltjes sum on uniform grids.
DistributionSpec convolve_cdfs(const DistributionSpec& f, const DistributionSpec& g,
                               std::size_t grid_size = kDefaultConvolutionGrid);

/// lhs = cpig(F * G), rhs = min(cpig(F), cpig(G)), checked in the claimed
/// direction (lhs <= rhs for theta >= 1, lhs >= rhs for theta < 1). Evidence
/// only; the claim is known to fail for some inputs.
BoundReport convolution_bound_report(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                                     std::size_t grid_size = kDefaultConvolutionGrid,
                                     const EvalOptions& opts = {});

}  // namespace cpig
