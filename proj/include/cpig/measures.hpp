#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpig/distributions.hpp"
#include "cpig/numerics.hpp"

namespace cpig {

/// Strictly positive generating-function parameter.
class Theta {
public:
    explicit Theta(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

enum class Method { ClosedForm, Quadrature, MonteCarlo };

std::string_view to_string(Method m) noexcept;

struct MeasureResult {
    double value = 0.0;
    double abs_err = 0.0;
    Method method = Method::Quadrature;
    std::vector<std::string> warnings;
};

struct EvalOptions {
    double tol = kDefaultTol;
    /// Skip registered closed forms and always integrate numerically.
    bool force_quadrature = false;
};

enum class Side { Past, Residual };

/// Integration domain shared by one or more distributions.
struct Domain {
    double lower;
    double upper;
    double truncation;
    std::vector<double> breakpoints;
};

Domain domain_of(const DistributionSpec& f);
Domain domain_of(const DistributionSpec& f, const DistributionSpec& g);

/// Adaptive integral of `integrand` over the domain, tagged as quadrature.
MeasureResult integrate_over(const Domain& domain, const Integrand& integrand, double tol);

/// u^e with the conventions 0^0 = 1 and u <= 0 -> 0 for e > 0.
double pow0(double u, double e);

/// Integral of F^alpha * (1 - F)^beta (two-parameter generating function).
MeasureResult cigf(const DistributionSpec& f, double alpha, double beta, const EvalOptions& opts = {});

/// Integral of F^theta over the support. Divergent when the support is
/// unbounded above.
MeasureResult cpig(const DistributionSpec& f, Theta theta, const EvalOptions& opts = {});

/// Residual counterpart, integral of (1 - F)^theta; equals cigf(f, 0, theta).
MeasureResult crig(const DistributionSpec& f, Theta theta, const EvalOptions& opts = {});

/// Integral of F^theta G^theta over the union of supports.
MeasureResult rcpig(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                    const EvalOptions& opts = {});

/// (1/n!) * integral of F (-ln F)^n; n = 0 gives the integral of F.
MeasureResult gcpe(const DistributionSpec& f, int n, const EvalOptions& opts = {});
MeasureResult gcre(const DistributionSpec& f, int n, const EvalOptions& opts = {});

/// -1/2 * integral of F^2 (past) or (1 - F)^2 (residual).
MeasureResult cumulative_extropy(const DistributionSpec& f, Side side, const EvalOptions& opts = {});

/// Gini mean difference, 2 * integral of F (1 - F).
MeasureResult gmd(const DistributionSpec& f, const EvalOptions& opts = {});

/// Differential entropy -integral f ln f (natural log, 0 ln 0 = 0).
MeasureResult shannon_entropy(const DistributionSpec& f, const EvalOptions& opts = {});

/// Partial sum over n = 0..terms of (1 - theta)^n * gcpe(f, n). A warning is
/// attached when the term magnitude grows three times in a row.
MeasureResult cpig_series_partial(const DistributionSpec& f, Theta theta, int terms,
                                  const EvalOptions& opts = {});

/// n-th theta-derivative (n = 1, 2, 3) of theta -> cpig(f, theta) at theta0
/// by central differences. h <= 0 selects the default step for the order.
MeasureResult cpig_theta_derivative(const DistributionSpec& f, double theta0, int order,
                                    double h = 0.0, const EvalOptions& opts = {});

/// CPIG of the maximum of n i.i.d. copies: integral of F^(n theta).
MeasureResult cpig_order_statistic(const DistributionSpec& f, int n, Theta theta,
                                   const EvalOptions& opts = {});

/// E[X_(n)] for a nonnegative support, l + integral over (l, r) of (1 - F^n).
MeasureResult order_stat_mean(const DistributionSpec& f, int n, const EvalOptions& opts = {});

/// cpig_order_statistic / order_stat_mean.
MeasureResult order_stat_cpig_ratio(const DistributionSpec& f, int n, Theta theta,
                                    const EvalOptions& opts = {});

/// CPIG of phi(X) computed as the integral of F^theta * phi' over F's support.
MeasureResult cpig_transformed(const DistributionSpec& f, const MonotoneTransform& phi, Theta theta,
                               const EvalOptions& opts = {});

}  // namespace cpig
