#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace cpig {

inline constexpr double kDefaultTol = 1e-9;

struct QuadratureResult {
    double value = 0.0;
    double abs_err = 0.0;
    std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
    /// Required when the upper limit is +inf: the point past which the
    /// integrand is treated as a tail (normally F^{-1}(1 - 1e-10)).
    std::optional<double> truncation;
    /// Interior points where the integrand may be non-smooth; the interval is
    /// split there before refinement starts.
    std::vector<double> breakpoints;
    std::size_t max_intervals = 20000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// An infinite b is handled by integrating up to the truncation point and
/// mapping the remaining tail onto [0, 1); its error estimate is added to
/// abs_err. Before that, f is probed at three geometrically spaced points
/// beyond the truncation point: if |f| exceeds 1e-6 at all of them the
/// integral is reported Divergent. MaxDepth is thrown when the interval
/// budget runs out before the tolerance is met.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double tol = kDefaultTol,
                                    const QuadratureOptions& options = {});

/// Default central-difference step for derivative orders 1, 2, 3.
double default_fd_step(int order);

/// Central finite difference of order 1, 2 or 3 (error O(h^2)).
double finite_difference(const std::function<double(double)>& g, double x0, int order, double h);

}  // namespace cpig
