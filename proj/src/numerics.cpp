#include "cpig/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "cpig/error.hpp"

namespace cpig {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a;
    double b;
    double value;
    double err;
    double resabs;
    bool operator<(const Segment& o) const { return err < o.err; }
};

double checked(const Integrand& f, double x) {
    double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw Error(ErrorKind::Divergent, os.str());
    }
    return y;
}

Segment gauss_kronrod(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};

    const double fc = checked(f, center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked(f, center - dx);
        f2[j] = checked(f, center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return {a, b, value, err, resabs};
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol,
                                  const std::vector<double>& breakpoints, std::size_t max_intervals) {
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> open;
    QuadratureResult out;
    double total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0;
    std::vector<Segment> settled;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gauss_kronrod(f, cuts[i], cuts[i + 1]);
        out.evaluations += 15;
        total += s.value;
        total_err += s.err;
        total_abs += s.resabs;
        open.push(s);
    }
    std::size_t intervals = open.size();

    auto converged = [&] { return total_err <= std::max(tol, 100.0 * kEps * total_abs); };

    while (!converged()) {
        if (open.empty()) break;
        Segment worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 4.0 * kEps * std::abs(mid)) {
            // Cannot be refined further in double precision.
            settled.push_back(worst);
            continue;
        }
        if (intervals + 1 > max_intervals) {
            std::ostringstream os;
            os << "interval budget " << max_intervals << " exhausted with error estimate "
               << total_err << " > " << tol;
            throw Error(ErrorKind::MaxDepth, os.str());
        }
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        out.evaluations += 30;
        ++intervals;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_abs += left.resabs + right.resabs - worst.resabs;
        open.push(left);
        open.push(right);
    }
    // Recompute from the parts to shed accumulated update roundoff.
    double value = 0.0;
    double err = 0.0;
    for (const auto& s : settled) {
        value += s.value;
        err += s.err;
    }
    while (!open.empty()) {
        value += open.top().value;
        err += open.top().err;
        open.pop();
    }
    out.value = value;
    out.abs_err = err;
    return out;
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double tol,
                                    const QuadratureOptions& options) {
    if (!std::isfinite(a)) throw Error(ErrorKind::Domain, "lower limit must be finite");
    if (!(b > a)) throw Error(ErrorKind::Domain, "integration requires a < b");
    if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");

    if (std::isfinite(b)) return integrate_finite(f, a, b, tol, options.breakpoints, options.max_intervals);

    if (!options.truncation || !std::isfinite(*options.truncation) || !(*options.truncation > a))
        throw Error(ErrorKind::Domain, "infinite upper limit requires a finite truncation point above a");
    const double cut = *options.truncation;
    const double span = std::max(cut - a, 1.0);
    bool all_large = true;
    for (double k : {1.0, 10.0, 100.0}) {
        const double y = f(cut + k * span);
        if (!(std::abs(y) > 1e-6)) all_large = false;
    }
    if (all_large)
        throw Error(ErrorKind::Divergent, "integrand does not decay toward +inf");

    QuadratureResult body = integrate_finite(f, a, cut, tol, options.breakpoints, options.max_intervals);
    // x = cut + t / (1 - t) maps [0, 1) onto [cut, inf).
    Integrand tail = [&f, cut](double t) {
        const double s = 1.0 - t;
        return f(cut + t / s) / (s * s);
    };
    QuadratureResult rest = integrate_finite(tail, 0.0, 1.0, tol, {}, options.max_intervals);
    body.value += rest.value;
    body.abs_err += rest.abs_err;
    body.evaluations += rest.evaluations + 3;
    return body;
}

double default_fd_step(int order) {
    switch (order) {
        case 1: return 1e-4;
        case 2: return 1e-3;
        case 3: return 1e-2;
        default: throw Error(ErrorKind::Domain, "finite difference order must be 1, 2 or 3");
    }
}

double finite_difference(const std::function<double(double)>& g, double x0, int order, double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::Domain, "step must be positive");
    switch (order) {
        case 1: return (g(x0 + h) - g(x0 - h)) / (2.0 * h);
        case 2: return (g(x0 + h) - 2.0 * g(x0) + g(x0 - h)) / (h * h);
        case 3:
            return (g(x0 + 2.0 * h) - 2.0 * g(x0 + h) + 2.0 * g(x0 - h) - g(x0 - 2.0 * h)) /
                   (2.0 * h * h * h);
        default: throw Error(ErrorKind::Domain, "finite difference order must be 1, 2 or 3");
    }
}

}  // namespace cpig
