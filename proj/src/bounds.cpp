#include "cpig/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "cpig/error.hpp"

namespace cpig {

BoundReport make_bound_report(std::string name, double lhs, double rhs, Relation relation) {
    BoundReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.relation = relation;
    r.slack = relation == Relation::GreaterEqual ? lhs - rhs : rhs - lhs;
    r.holds = r.slack >= -kBoundSlackTol;
    return r;
}

BoundReport not_applicable_report(std::string name, std::string reason) {
    BoundReport r;
    r.name = std::move(name);
    r.applicable = false;
    r.holds = false;
    r.note = std::move(reason);
    return r;
}

namespace {

// Hardy right-hand integral. The inner running integral int_l^v F is
// assembled from per-segment quadratures between breakpoints so that the
// outer integrand only integrates the final partial segment.
double hardy_integral(const DistributionSpec& f, double theta, double tol) {
    const Domain d = domain_of(f);
    std::vector<double> cuts{d.lower};
    cuts.insert(cuts.end(), d.breakpoints.begin(), d.breakpoints.end());
    cuts.push_back(d.upper);

    auto F = [&](double x) { return f.cdf(x); };
    std::vector<double> prefix(cuts.size(), 0.0);
    for (std::size_t i = 1; i < cuts.size(); ++i)
        prefix[i] = prefix[i - 1] + integrate_adaptive(F, cuts[i - 1], cuts[i], tol * 1e-3).value;

    auto running = [&](double v) {
        auto it = std::upper_bound(cuts.begin(), cuts.end(), v);
        std::size_t k = static_cast<std::size_t>(it - cuts.begin()) - 1;
        k = std::min(k, cuts.size() - 2);
        double acc = prefix[k];
        if (v > cuts[k]) acc += integrate_adaptive(F, cuts[k], v, tol * 1e-3).value;
        return acc;
    };
    // F vanishes below l >= 0, so int_0^v F = int_l^v F.
    Integrand outer = [&](double v) {
        if (v <= 0.0) return 0.0;
        return std::pow(std::max(running(v), 0.0) / v, theta);
    };
    QuadratureOptions qo;
    qo.breakpoints = d.breakpoints;
    return integrate_adaptive(outer, d.lower, d.upper, tol, qo).value;
}

}  // namespace

std::vector<BoundReport> bound_suite(const DistributionSpec& f, Theta theta, const EvalOptions& opts) {
    const double t = theta.value();
    const SupportInterval s = f.support();
    if (!(s.upper < kInf)) throw Error(ErrorKind::Divergent, "bounds require a bounded upper support");
    if (!f.has_density()) throw Error(ErrorKind::NoDensity, "the entropy bound needs a density");

    const double lhs = cpig(f, theta, opts).value;
    std::vector<BoundReport> out;

    const double h = shannon_entropy(f, opts).value;
    out.push_back(make_bound_report("entropy", lhs, std::exp(h - t), Relation::GreaterEqual));

    // At theta = 1 the left side must equal m bit for bit.
    const double m = cpig(f, Theta(1.0), opts).value;
    const double cpe = gcpe(f, 1, opts).value;
    out.push_back(make_bound_report("cpe", lhs, m * std::exp(-(t - 1.0) * cpe / m), Relation::GreaterEqual));

    if (t <= 1.0) {
        out.push_back(not_applicable_report("hardy", "requires theta > 1"));
    } else if (s.lower < 0.0) {
        out.push_back(not_applicable_report("hardy", "requires a nonnegative lower support"));
    } else {
        const double c = std::pow((t - 1.0) / t, t);
        out.push_back(make_bound_report("hardy", lhs, c * hardy_integral(f, t, opts.tol), Relation::GreaterEqual));
    }
    return out;
}

}  // namespace cpig
