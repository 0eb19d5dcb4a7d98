#include "cpig/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpig/error.hpp"

namespace cpig {

namespace {

const Uniform* as_uniform(const DistributionSpec& f, const EvalOptions& opts) {
    return opts.force_quadrature ? nullptr : std::get_if<Uniform>(&f.variant());
}

MeasureResult closed_form(double value) { return {value, 0.0, Method::ClosedForm, {}}; }

// F (-ln F)^n / n!, with the n = 0 term equal to F itself.
double gcpe_kernel(double u, int n, double log_nfact) {
    if (n == 0) return std::clamp(u, 0.0, 1.0);
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double ln_u = std::log(u);
    return std::exp(ln_u + n * std::log(-ln_u) - log_nfact);
}

void require_order(int n, int min) {
    if (n < min) throw Error(ErrorKind::Domain, "order must be at least " + std::to_string(min));
}

}  // namespace

Theta::Theta(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error(ErrorKind::Domain, "theta must be a positive finite number");
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

double pow0(double u, double e) {
    if (e == 0.0) return 1.0;
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return std::pow(u, e);
}

Domain domain_of(const DistributionSpec& f) {
    const SupportInterval s = f.support();
    return {s.lower, s.upper, f.truncation_point(), f.breakpoints()};
}

Domain domain_of(const DistributionSpec& f, const DistributionSpec& g) {
    Domain a = domain_of(f);
    Domain b = domain_of(g);
    Domain out{std::min(a.lower, b.lower), std::max(a.upper, b.upper),
               std::max(a.truncation, b.truncation), a.breakpoints};
    out.breakpoints.insert(out.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    for (double v : {a.lower, a.upper, b.lower, b.upper})
        if (std::isfinite(v)) out.breakpoints.push_back(v);
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
    out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                          out.breakpoints.end());
    return out;
}

MeasureResult integrate_over(const Domain& domain, const Integrand& integrand, double tol) {
    QuadratureOptions qo;
    qo.breakpoints = domain.breakpoints;
    if (!(domain.upper < kInf)) qo.truncation = domain.truncation;
    if (!(domain.upper > domain.lower)) return {0.0, std::numeric_limits<double>::min(), Method::Quadrature, {}};
    QuadratureResult q = integrate_adaptive(integrand, domain.lower, domain.upper, tol, qo);
    const double err = std::max({q.abs_err, std::numeric_limits<double>::epsilon() * std::abs(q.value),
                                 std::numeric_limits<double>::min()});
    return {q.value, err, Method::Quadrature, {}};
}

MeasureResult cigf(const DistributionSpec& f, double alpha, double beta, const EvalOptions& opts) {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0))
        throw Error(ErrorKind::Domain, "cigf requires alpha, beta >= 0 with alpha + beta > 0");
    return integrate_over(
        domain_of(f), [&](double x) { return pow0(f.cdf(x), alpha) * pow0(f.survival(x), beta); },
        opts.tol);
}

MeasureResult cpig(const DistributionSpec& f, Theta theta, const EvalOptions& opts) {
    const double t = theta.value();
    const SupportInterval s = f.support();
    if (!(s.upper < kInf))
        throw Error(ErrorKind::Divergent, "CPIG diverges: upper support is unbounded and F^theta -> 1");
    if (const Uniform* u = as_uniform(f, opts)) return closed_form((u->b - u->a) / (t + 1.0));
    if (!opts.force_quadrature)
        if (const Power* p = std::get_if<Power>(&f.variant())) return closed_form(1.0 / (p->exponent * t + 1.0));
    return integrate_over(domain_of(f), [&](double x) { return pow0(f.cdf(x), t); }, opts.tol);
}

MeasureResult crig(const DistributionSpec& f, Theta theta, const EvalOptions& opts) {
    return cigf(f, 0.0, theta.value(), opts);
}

MeasureResult rcpig(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                    const EvalOptions& opts) {
    const double t = theta.value();
    return integrate_over(domain_of(f, g), [&](double x) { return pow0(f.cdf(x), t) * pow0(g.cdf(x), t); },
                          opts.tol);
}

MeasureResult gcpe(const DistributionSpec& f, int n, const EvalOptions& opts) {
    require_order(n, 0);
    if (n == 0 && !(f.support().upper < kInf))
        throw Error(ErrorKind::Divergent, "integral of F diverges on an unbounded support");
    if (const Uniform* u = as_uniform(f, opts)) return closed_form((u->b - u->a) * std::ldexp(1.0, -(n + 1)));
    const double log_nfact = std::lgamma(n + 1.0);
    return integrate_over(domain_of(f), [&](double x) { return gcpe_kernel(f.cdf(x), n, log_nfact); },
                          opts.tol);
}

MeasureResult gcre(const DistributionSpec& f, int n, const EvalOptions& opts) {
    require_order(n, 1);
    const double log_nfact = std::lgamma(n + 1.0);
    return integrate_over(domain_of(f), [&](double x) { return gcpe_kernel(f.survival(x), n, log_nfact); },
                          opts.tol);
}

MeasureResult cumulative_extropy(const DistributionSpec& f, Side side, const EvalOptions& opts) {
    if (const Uniform* u = as_uniform(f, opts)) return closed_form(-(u->b - u->a) / 6.0);
    MeasureResult r =
        side == Side::Past
            ? integrate_over(domain_of(f), [&](double x) { double F = f.cdf(x); return F * F; }, opts.tol)
            : integrate_over(domain_of(f), [&](double x) { double S = f.survival(x); return S * S; }, opts.tol);
    r.value *= -0.5;
    r.abs_err *= 0.5;
    return r;
}

MeasureResult gmd(const DistributionSpec& f, const EvalOptions& opts) {
    if (const Uniform* u = as_uniform(f, opts)) return closed_form((u->b - u->a) / 3.0);
    MeasureResult r = integrate_over(
        domain_of(f), [&](double x) { return f.cdf(x) * f.survival(x); }, opts.tol);
    r.value *= 2.0;
    r.abs_err *= 2.0;
    return r;
}

MeasureResult shannon_entropy(const DistributionSpec& f, const EvalOptions& opts) {
    if (!f.has_density()) throw Error(ErrorKind::NoDensity, "entropy requires a density");
    return integrate_over(
        domain_of(f),
        [&](double x) {
            const double d = f.pdf(x);
            return d > 0.0 ? -d * std::log(d) : 0.0;
        },
        opts.tol);
}

MeasureResult cpig_series_partial(const DistributionSpec& f, Theta theta, int terms,
                                  const EvalOptions& opts) {
    require_order(terms, 0);
    const double ratio = 1.0 - theta.value();
    MeasureResult out{0.0, 0.0, Method::ClosedForm, {}};
    double factor = 1.0;
    double prev_mag = -1.0;
    int growth_run = 0;
    bool warned = false;
    for (int n = 0; n <= terms; ++n) {
        MeasureResult g = gcpe(f, n, opts);
        const double term = factor * g.value;
        out.value += term;
        out.abs_err += std::abs(factor) * g.abs_err;
        if (g.method != Method::ClosedForm) out.method = Method::Quadrature;
        const double mag = std::abs(term);
        growth_run = (prev_mag >= 0.0 && mag > prev_mag) ? growth_run + 1 : 0;
        if (growth_run >= 3 && !warned) {
            out.warnings.push_back("Diverging: term magnitude grew for 3 consecutive n (at n = " +
                                   std::to_string(n) + ")");
            warned = true;
        }
        prev_mag = mag;
        factor *= ratio;
    }
    return out;
}

MeasureResult cpig_theta_derivative(const DistributionSpec& f, double theta0, int order, double h,
                                    const EvalOptions& opts) {
    if (h <= 0.0) h = default_fd_step(order);
    const double reach = order == 3 ? 2.0 * h : h;
    if (!(theta0 - reach > 0.0))
        throw Error(ErrorKind::Domain, "theta0 too close to 0 for the finite-difference stencil");

    // Tighter inner tolerance so quadrature noise stays below the h^order scale.
    EvalOptions inner = opts;
    inner.tol = std::max(opts.tol * 1e-4, 1e-14);
    Method method = Method::ClosedForm;
    double quad_err = 0.0;
    auto g = [&](double t) {
        MeasureResult r = cpig(f, Theta(t), inner);
        if (r.method != Method::ClosedForm) method = Method::Quadrature;
        quad_err = std::max(quad_err, r.abs_err);
        return r.value;
    };
    const double d_h = finite_difference(g, theta0, order, h);
    // Stencil weights sum (in absolute value) to at most 6 / h^order.
    double err = quad_err * 6.0 / std::pow(h, order);
    if (theta0 - 2.0 * reach > 0.0) {
        const double d_2h = finite_difference(g, theta0, order, 2.0 * h);
        err += std::abs(d_h - d_2h) / 3.0;
    }
    err = std::max(err, std::numeric_limits<double>::epsilon() * std::abs(d_h));
    return {d_h, err, method, {}};
}

MeasureResult cpig_order_statistic(const DistributionSpec& f, int n, Theta theta, const EvalOptions& opts) {
    require_order(n, 1);
    return cpig(f, Theta(n * theta.value()), opts);
}

MeasureResult order_stat_mean(const DistributionSpec& f, int n, const EvalOptions& opts) {
    require_order(n, 1);
    const SupportInterval s = f.support();
    if (s.lower < 0.0) throw Error(ErrorKind::Domain, "order-statistic mean requires a nonnegative support");
    MeasureResult r = integrate_over(
        domain_of(f),
        [&](double x) {
            const double S = f.survival(x);
            if (S >= 1.0) return 1.0;
            return -std::expm1(n * std::log1p(-S));
        },
        opts.tol);
    r.value += s.lower;
    return r;
}

MeasureResult order_stat_cpig_ratio(const DistributionSpec& f, int n, Theta theta, const EvalOptions& opts) {
    MeasureResult num = cpig_order_statistic(f, n, theta, opts);
    MeasureResult den = order_stat_mean(f, n, opts);
    const double v = num.value / den.value;
    const double err = std::abs(v) * (num.abs_err / std::abs(num.value) + den.abs_err / std::abs(den.value));
    return {v, std::max(err, std::numeric_limits<double>::min()), Method::Quadrature, {}};
}

MeasureResult cpig_transformed(const DistributionSpec& f, const MonotoneTransform& phi, Theta theta,
                               const EvalOptions& opts) {
    const Domain d = domain_of(f);
    phi.check_on(d.lower, std::isfinite(d.upper) ? d.upper : d.truncation);
    const double t = theta.value();
    return integrate_over(d, [&](double x) { return pow0(f.cdf(x), t) * phi.derivative(x); }, opts.tol);
}

}  // namespace cpig
