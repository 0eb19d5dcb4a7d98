#include "cpig/battery.hpp"

#include <utility>

namespace cpig {

DistributionSpec random_piecewise_cdf(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(3, 20);
    std::uniform_real_distribution<double> origin(0.0, 1.0);
    std::uniform_real_distribution<double> step(0.05, 1.0);
    std::uniform_real_distribution<double> mass(0.02, 1.0);

    const int k = count(rng);
    std::vector<double> xs{origin(rng)};
    std::vector<double> ps{0.0};
    double total = 0.0;
    for (int i = 1; i < k; ++i) {
        xs.push_back(xs.back() + step(rng));
        total += mass(rng);
        ps.push_back(total);
    }
    std::vector<std::pair<double, double>> knots;
    knots.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) knots.emplace_back(xs[i], ps[i] / total);
    knots.back().second = 1.0;
    return make_piecewise_cdf(knots);
}

std::vector<DistributionSpec> piecewise_battery(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<DistributionSpec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_piecewise_cdf(rng));
    return out;
}

}  // namespace cpig
