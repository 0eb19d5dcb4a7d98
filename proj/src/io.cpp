#include "cpig/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cpig/error.hpp"

namespace cpig::io {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

double parse_double_at(std::string_view text, std::size_t offset) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    if (b == e) throw ParseError(offset + b, "expected a number");
    // from_chars rejects a leading '+'.
    if (text[b] == '+') ++b;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data() + b, text.data() + e, v);
    if (ec != std::errc() || ptr != text.data() + e)
        throw ParseError(offset + static_cast<std::size_t>(ptr - text.data()), "malformed number");
    return v;
}

std::vector<double> parse_list_at(std::string_view text, std::size_t offset) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_double_at(text.substr(start, end - start), offset + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) { return parse_list_at(text, 0); }

DistributionSpec parse_dist_spec(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError(text.size(), "expected 'family:params'");
    const std::string_view family = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    const std::size_t at = colon + 1;

    auto expect_count = [&](const std::vector<double>& v, std::size_t n) {
        if (v.size() != n)
            throw ParseError(at, std::string(family) + " takes " + std::to_string(n) + " parameter(s), got " +
                                     std::to_string(v.size()));
    };

    try {
        if (family == "uniform" || family == "unif") {
            auto v = parse_list_at(rest, at);
            expect_count(v, 2);
            return DistributionSpec::uniform(v[0], v[1]);
        }
        if (family == "exp" || family == "exponential") {
            auto v = parse_list_at(rest, at);
            expect_count(v, 1);
            return DistributionSpec::exponential(v[0]);
        }
        if (family == "power") {
            auto v = parse_list_at(rest, at);
            expect_count(v, 1);
            return DistributionSpec::power(v[0]);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(at, e.what());
    }
    if (family == "pwcdf") {
        if (rest.empty()) throw ParseError(at, "missing file path");
        return make_piecewise_cdf(read_knots_file(std::string(rest)));
    }
    if (family == "sample") {
        if (rest.empty()) throw ParseError(at, "missing file path");
        const auto values = read_sample_file(std::string(rest));
        return empirical_cdf_spec(values);
    }
    throw ParseError(0, "unknown family '" + std::string(family) + "'");
}

std::vector<double> parse_sample_text(std::string_view text) {
    std::vector<double> out;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t nl = text.find('\n', line_start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(line_start, nl - line_start);
        std::size_t first = 0;
        while (first < line.size() && is_space(line[first])) ++first;
        if (first < line.size() && line[first] != '#') {
            std::size_t tok = 0;
            while (tok < line.size()) {
                while (tok < line.size() && (is_space(line[tok]) || line[tok] == ',')) ++tok;
                std::size_t end = tok;
                while (end < line.size() && !is_space(line[end]) && line[end] != ',') ++end;
                if (end > tok) out.push_back(parse_double_at(line.substr(tok, end - tok), line_start + tok));
                tok = end;
            }
        }
        line_start = nl + 1;
    }
    return out;
}

std::vector<double> read_sample_file(const std::filesystem::path& path) { return parse_sample_text(slurp(path)); }

std::vector<std::pair<double, double>> parse_knots_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, "knot file is not valid JSON");
    }
    if (!doc.is_array()) throw ParseError(0, "knot file must hold a JSON array of [x, p] pairs");
    std::vector<std::pair<double, double>> knots;
    for (const auto& item : doc) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw ParseError(knots.size(), "each knot must be a [x, p] number pair");
        knots.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return knots;
}

std::vector<std::pair<double, double>> read_knots_file(const std::filesystem::path& path) {
    return parse_knots_text(slurp(path));
}

}  // namespace cpig::io
