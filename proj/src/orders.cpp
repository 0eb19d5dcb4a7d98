#include "cpig/orders.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cpig/error.hpp"

namespace cpig {

namespace {

constexpr double kQuantileEdge = 1e-4;
constexpr double kRelSlack = 1e-12;

void record(OrderReport& r, double at, double lhs, double rhs, bool ok) {
    ++r.checked_points;
    if (!ok && r.holds) {
        r.holds = false;
        r.witness = OrderWitness{at, lhs, rhs};
    }
}

void require_grid(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::Domain, "grid needs at least 2 points");
}

}  // namespace

OrderReport dispersive_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                   std::size_t grid_size) {
    require_grid(grid_size);
    if (!f.has_density() || !g.has_density())
        throw Error(ErrorKind::NoDensity, "dispersive order needs densities");
    OrderReport r;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = kQuantileEdge + (1.0 - 2.0 * kQuantileEdge) * static_cast<double>(i) /
                                             static_cast<double>(grid_size - 1);
        const double lhs = f.pdf(f.quantile(t));
        const double rhs = g.pdf(g.quantile(t));
        record(r, t, lhs, rhs, lhs >= rhs * (1.0 - kRelSlack));
    }
    return r;
}

OrderReport stochastic_order_check(const DistributionSpec& f, const DistributionSpec& g,
                                   std::size_t grid_size) {
    require_grid(grid_size);
    const Domain d = domain_of(f, g);
    const double hi = std::isfinite(d.upper) ? d.upper : d.truncation;
    OrderReport r;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double x = d.lower + (hi - d.lower) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        const double lhs = f.cdf(x);
        const double rhs = g.cdf(x);
        record(r, x, lhs, rhs, lhs >= rhs - kRelSlack);
    }
    return r;
}

OrderReport cpig_order_check(const DistributionSpec& f, const DistributionSpec& g,
                             std::span<const Theta> thetas, const EvalOptions& opts) {
    OrderReport r;
    for (Theta t : thetas) {
        const MeasureResult a = cpig(f, t, opts);
        const MeasureResult b = cpig(g, t, opts);
        const double slack = a.abs_err + b.abs_err + kRelSlack * std::max(std::abs(a.value), std::abs(b.value));
        record(r, t.value(), a.value, b.value, a.value <= b.value + slack);
    }
    return r;
}

DistributionSpec convolve_cdfs(const DistributionSpec& f, const DistributionSpec& g, std::size_t grid_size) {
    require_grid(grid_size);
    const SupportInterval sf = f.support();
    const SupportInterval sg = g.support();
    if (!sf.bounded() || !sg.bounded())
        throw Error(ErrorKind::UnboundedSupport, "convolution requires bounded supports");

    // Stieltjes increments of G on its own uniform grid.
    const std::size_t m = grid_size;
    std::vector<double> ys(m + 1);
    std::vector<double> dG(m);
    const double gw = sg.width();
    double prev = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
        ys[j] = gw > 0.0 ? sg.lower + gw * static_cast<double>(j) / static_cast<double>(m) : sg.lower;
        const double cur = j == m ? 1.0 : g.cdf(ys[j]);
        if (j > 0) dG[j - 1] = cur - prev;
        prev = cur;
    }
    // Mass at (or left of) sg.lower, e.g. an atom of a step CDF.
    const double g0 = gw > 0.0 ? g.cdf(sg.lower) : 1.0;

    const double lo = sf.lower + sg.lower;
    const double hi = sf.upper + sg.upper;
    std::vector<std::pair<double, double>> knots(grid_size);
    double running_max = 0.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        double acc = g0 * f.cdf(t - sg.lower);
        if (gw > 0.0) {
            double left = f.cdf(t - ys[0]);
            for (std::size_t j = 0; j < m; ++j) {
                const double right = f.cdf(t - ys[j + 1]);
                acc += 0.5 * (left + right) * dG[j];
                left = right;
            }
        }
        running_max = std::max(running_max, std::clamp(acc, 0.0, 1.0));
        knots[i] = {t, running_max};
    }
    knots.front().second = 0.0;
    knots.back().second = 1.0;
    return make_piecewise_cdf(knots);
}

BoundReport convolution_bound_report(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                                     std::size_t grid_size, const EvalOptions& opts) {
    const DistributionSpec sum = convolve_cdfs(f, g, grid_size);
    const double lhs = cpig(sum, theta, opts).value;
    const double rhs = std::min(cpig(f, theta, opts).value, cpig(g, theta, opts).value);
    const Relation rel = theta.value() >= 1.0 ? Relation::LessEqual : Relation::GreaterEqual;
    BoundReport r = make_bound_report("convolution", lhs, rhs, rel);
    r.note = "reported-only: cpig(X+Y) vs min(cpig(X), cpig(Y))";
    return r;
}

}  // namespace cpig
