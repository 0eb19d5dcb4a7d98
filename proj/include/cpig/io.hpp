#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpig/distributions.hpp"

namespace cpig::io {

/// Parses "family:params" — uniform:a,b | exp:rate | power:c | pwcdf:<path> |
/// sample:<path>. Throws ParseError with the offending character position.
DistributionSpec parse_dist_spec(std::string_view text);

/// Comma-separated decimals, e.g. "0.5,1,2".
std::vector<double> parse_number_list(std::string_view text);

/// One decimal per line, or comma/whitespace separated. Blank lines and
/// lines starting with '#' are skipped.
std::vector<double> parse_sample_text(std::string_view text);
std::vector<double> read_sample_file(const std::filesystem::path& path);

/// JSON array of [x, p] pairs.
std::vector<std::pair<double, double>> parse_knots_text(std::string_view text);
std::vector<std::pair<double, double>> read_knots_file(const std::filesystem::path& path);

}  // namespace cpig::io
