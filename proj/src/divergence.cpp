#include "cpig/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cpig/error.hpp"

namespace cpig {

namespace {

constexpr double kSingularMass = 1e-12;

MeasureResult exact_zero() { return {0.0, 0.0, Method::ClosedForm, {}}; }

bool all_identical(std::span<const DistributionSpec> comps) {
    return std::all_of(comps.begin(), comps.end(), [&](const auto& c) { return c == comps.front(); });
}

void check_components(std::span<const DistributionSpec> comps, const MixWeights& w) {
    if (comps.size() < 2) throw Error(ErrorKind::Domain, "Jensen measures need at least two components");
    if (comps.size() != w.size()) throw Error(ErrorKind::InvalidWeights, "component and weight counts differ");
}

Domain union_domain(std::span<const DistributionSpec> comps) {
    Domain d = domain_of(comps.front());
    for (std::size_t i = 1; i < comps.size(); ++i) {
        const Domain next = domain_of(comps[i]);
        d.lower = std::min(d.lower, next.lower);
        d.upper = std::max(d.upper, next.upper);
        d.truncation = std::max(d.truncation, next.truncation);
        d.breakpoints.insert(d.breakpoints.end(), next.breakpoints.begin(), next.breakpoints.end());
    }
    for (const auto& c : comps) {
        const SupportInterval s = c.support();
        if (std::isfinite(s.lower)) d.breakpoints.push_back(s.lower);
        if (std::isfinite(s.upper)) d.breakpoints.push_back(s.upper);
    }
    std::sort(d.breakpoints.begin(), d.breakpoints.end());
    d.breakpoints.erase(std::unique(d.breakpoints.begin(), d.breakpoints.end()), d.breakpoints.end());
    return d;
}

// Pointwise Jensen gap sign * (phi(sum p_i u_i) - sum p_i phi(u_i)).
template <class Phi>
MeasureResult jensen_gap(std::span<const DistributionSpec> comps, const MixWeights& w, Phi phi, double sign,
                         double tol) {
    std::vector<double> u(comps.size());
    return integrate_over(
        union_domain(comps),
        [&](double x) {
            double mix = 0.0;
            double avg = 0.0;
            bool all_one = true;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                u[i] = comps[i].cdf(x);
                all_one = all_one && u[i] >= 1.0;
                mix += w[i] * u[i];
                avg += w[i] * phi(u[i]);
            }
            if (all_one) return 0.0;
            return sign * (phi(std::min(mix, 1.0)) - avg);
        },
        tol);
}

// F^theta * L_{1/theta}((F/G)^theta) = F^theta * theta/(theta-1) * expm1((theta-1) ln(F/G)).
// As F -> 0 with G > 0 the kernel behaves like theta/(theta-1) F^(2 theta-1) G^(1-theta):
// zero above theta = 1/2, -sqrt(G) at 1/2, unbounded below.
double divergence_kernel(double F, double G, double theta) {
    if (F <= 0.0) {
        if (theta > 0.5) return 0.0;
        if (theta == 0.5) return -std::sqrt(G);
        throw Error(ErrorKind::Divergent, "F = 0 where G > 0 makes the integrand infinite for theta < 1/2");
    }
    const double ln_r = std::log(F) - std::log(G);
    const double ft = std::pow(F, theta);
    if (theta == 1.0) return ft * ln_r;
    return ft * theta / (theta - 1.0) * std::expm1((theta - 1.0) * ln_r);
}

}  // namespace

double generalized_log(double z, double q) {
    if (!(z > 0.0)) throw Error(ErrorKind::Domain, "generalized log needs z > 0");
    if (!(q >= 0.0)) throw Error(ErrorKind::Domain, "generalized log needs q >= 0");
    if (q == 1.0) return std::log(z);
    return std::expm1((1.0 - q) * std::log(z)) / (1.0 - q);
}

MeasureResult cpig_divergence(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                              const EvalOptions& opts) {
    if (f == g) return exact_zero();
    const double t = theta.value();
    const double sign = t >= 1.0 ? 1.0 : -1.0;
    auto integrand = [&](double x) {
        const double F = f.cdf(x);
        const double G = g.cdf(x);
        if (G <= 0.0) {
            if (F > kSingularMass) {
                std::ostringstream os;
                os << "G = 0 where F = " << F << " at x = " << x;
                throw Error(ErrorKind::RatioSingularity, os.str());
            }
            return 0.0;
        }
        return sign * (divergence_kernel(F, G, t) - std::pow(F, t) + std::pow(G, t));
    };
    const Domain d = domain_of(f, g);
    // Grid scan so a singular region is reported even if no quadrature node lands in it.
    const double hi = std::isfinite(d.upper) ? d.upper : d.truncation;
    for (int i = 0; i <= 4096; ++i) integrand(d.lower + (hi - d.lower) * i / 4096.0);
    return integrate_over(d, integrand, opts.tol);
}

MeasureResult jcpig(std::span<const DistributionSpec> components, const MixWeights& weights, Theta theta,
                    const EvalOptions& opts) {
    check_components(components, weights);
    if (all_identical(components)) return exact_zero();
    const double t = theta.value();
    return jensen_gap(components, weights, [t](double u) { return pow0(u, t); }, t <= 1.0 ? 1.0 : -1.0,
                      opts.tol);
}

DecompositionReport jcpig_mixture_decomposition(std::span<const DistributionSpec> components,
                                                const MixWeights& weights, Theta theta,
                                                const EvalOptions& opts) {
    check_components(components, weights);
    DecompositionReport r;
    r.jcpig_value = jcpig(components, weights, theta, opts).value;
    const DistributionSpec mix =
        DistributionSpec::mixture(std::vector<DistributionSpec>(components.begin(), components.end()), weights);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (weights[i] == 0.0) continue;
        r.weighted_divergence_sum += weights[i] * cpig_divergence(components[i], mix, theta, opts).value;
    }
    return r;
}

MeasureResult fcpe(const DistributionSpec& f, double q, const EvalOptions& opts) {
    if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::Domain, "fractional order q must lie in (0, 1]");
    return integrate_over(
        domain_of(f),
        [&](double x) {
            const double F = f.cdf(x);
            return (F <= 0.0 || F >= 1.0) ? 0.0 : F * std::pow(-std::log(F), q);
        },
        opts.tol);
}

MeasureResult jfcpe(std::span<const DistributionSpec> components, const MixWeights& weights, double q,
                    const EvalOptions& opts) {
    check_components(components, weights);
    if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::Domain, "fractional order q must lie in (0, 1]");
    if (all_identical(components)) return exact_zero();
    return jensen_gap(
        components, weights,
        [q](double u) { return (u <= 0.0 || u >= 1.0) ? 0.0 : u * std::pow(-std::log(u), q); }, 1.0, opts.tol);
}

MeasureResult cpte(const DistributionSpec& f, double q, const EvalOptions& opts) {
    if (!(q > 0.0)) throw Error(ErrorKind::Domain, "Taneja order q must be positive");
    const double c = std::exp2(q - 1.0);
    return integrate_over(
        domain_of(f),
        [&](double x) {
            const double F = f.cdf(x);
            return (F <= 0.0 || F >= 1.0) ? 0.0 : -c * std::pow(F, q) * std::log(F);
        },
        opts.tol);
}

MeasureResult jcpte(std::span<const DistributionSpec> components, const MixWeights& weights, double q,
                    const EvalOptions& opts) {
    check_components(components, weights);
    if (!(q > 0.0)) throw Error(ErrorKind::Domain, "Taneja order q must be positive");
    if (all_identical(components)) return exact_zero();
    const double c = std::exp2(q - 1.0);
    MeasureResult r = jensen_gap(
        components, weights,
        [q, c](double u) { return (u <= 0.0 || u >= 1.0) ? 0.0 : -c * std::pow(u, q) * std::log(u); }, 1.0,
        opts.tol);
    if (q > 1.0) r.warnings.push_back("sign not guaranteed for q > 1");
    return r;
}

}  // namespace cpig
