#pragma once

#include <string>
#include <vector>

#include "cpig/distributions.hpp"
#include "cpig/measures.hpp"

namespace cpig {

inline constexpr double kBoundSlackTol = 1e-9;

/// Which way the claimed inequality points.
enum class Relation { GreaterEqual, LessEqual };

/// One side-by-side inequality check. slack is the signed margin in the
/// claimed direction (lhs - rhs for >=, rhs - lhs for <=), so
/// holds == (slack >= -kBoundSlackTol) whenever the report is applicable.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::GreaterEqual;
    bool applicable = true;
    bool holds = false;
    double slack = 0.0;
    std::string note;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs, Relation relation);
BoundReport not_applicable_report(std::string name, std::string reason);

/// The three lower bounds on cpig(F, theta), in order:
///   entropy:  cpig >= exp(H(X) - theta)                       (needs a density)
///   cpe:      cpig >= m * exp(-(theta - 1) * cpe / m),  m = integral of F
///   hardy:    cpig >= ((theta-1)/theta)^theta * integral of ((1/v) int_0^v F)^theta dv
/// The Hardy report is NotApplicable for theta <= 1 or a negative lower support.
std::vector<BoundReport> bound_suite(const DistributionSpec& f, Theta theta, const EvalOptions& opts = {});

}  // namespace cpig
