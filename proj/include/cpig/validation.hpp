#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cpig {

/// ReportedOnly marks a published claim whose two sides are computed and
/// shown but not asserted, because an exact oracle contradicts it.
enum class ClaimStatus { Pass, Fail, ReportedOnly };

std::string_view to_string(ClaimStatus s) noexcept;

struct ClaimCheck {
    std::string id;
    std::string claim;
    ClaimStatus status = ClaimStatus::Pass;
    std::string detail;
};

/// Runs the identity/inequality battery. Deterministic for a given seed;
/// results are in a fixed order.
std::vector<ClaimCheck> run_validation(std::uint64_t seed);

bool all_passed(const std::vector<ClaimCheck>& checks);

}  // namespace cpig
