#include <algorithm>
#include <cmath>

#include "cpig/battery.hpp"
#include "cpig/divergence.hpp"
#include "cpig/error.hpp"
#include "support.hpp"

using namespace cpig;

namespace {

const DistributionSpec kU01 = DistributionSpec::uniform(0, 1);
const DistributionSpec kPow2 = DistributionSpec::power(2);
const MixWeights kHalf({0.5, 0.5});

DistributionSpec half_mixture() { return DistributionSpec::mixture({kU01, kPow2}, kHalf); }

}  // namespace

TEST_CASE("generalized log") {
    for (double q : {0.0, 0.5, 1.0, 2.0}) CHECK(generalized_log(1.0, q) == 0.0);
    CHECK_NEAR(generalized_log(4.0, 0.5), 2.0, 1e-15);
    CHECK_NEAR(generalized_log(std::exp(1.0), 1.0), 1.0, 1e-15);
    CHECK_THROWS_KIND(generalized_log(0.0, 0.5), ErrorKind::Domain);
    CHECK_THROWS_KIND(generalized_log(-1.0, 0.5), ErrorKind::Domain);
}

TEST_CASE("generalized log is continuous at q one") {
    for (double z = 0.1; z <= 10.0; z += 0.05)
        for (double q : {1.0 - 1e-6, 1.0 + 1e-6}) CHECK(std::abs(generalized_log(z, q) - std::log(z)) <= 1e-5);
}

TEST_CASE("divergence oracles against the half mixture") {
    const auto m = half_mixture();
    CHECK_NEAR(cpig_divergence(kU01, m, Theta(2)).value, 0.0309220555731146, 1e-9);
    CHECK_NEAR(cpig_divergence(kPow2, m, Theta(2)).value, 0.0190779444268854, 1e-9);
}

TEST_CASE("divergence of identical inputs is exactly zero") {
    for (double t : {0.3, 1.0, 2.0}) {
        const auto r = cpig_divergence(kU01, kU01, Theta(t));
        CHECK(r.value == 0.0);
        CHECK(r.abs_err == 0.0);
    }
}

TEST_CASE("divergence singularities") {
    CHECK_THROWS_KIND(cpig_divergence(kU01, DistributionSpec::uniform(0.5, 1), Theta(2)), ErrorKind::RatioSingularity);
    // F = 0 where G > 0 is harmless above theta = 1/2 and infinite below it.
    CHECK(cpig_divergence(DistributionSpec::uniform(0.5, 1), kU01, Theta(2)).value >= 0.0);
    CHECK_THROWS_KIND(cpig_divergence(DistributionSpec::uniform(0.5, 1), kU01, Theta(0.25)), ErrorKind::Divergent);
}

TEST_CASE("divergence at theta one uses the log branch") {
    const auto r = cpig_divergence(kPow2, half_mixture(), Theta(1));
    CHECK(std::isfinite(r.value));
    CHECK(r.value >= 0.0);
    const double below = cpig_divergence(kPow2, half_mixture(), Theta(1 - 1e-7)).value;
    const double above = cpig_divergence(kPow2, half_mixture(), Theta(1 + 1e-7)).value;
    CHECK_NEAR(above, r.value, 1e-5);
    CHECK(std::isfinite(below));
}

TEST_CASE("divergence is nonnegative on battery mixtures") {
    const auto battery = piecewise_battery(60, 71);
    for (std::size_t i = 0; i + 1 < battery.size(); ++i) {
        const auto g = DistributionSpec::mixture({battery[i], battery[i + 1]}, MixWeights({0.6, 0.4}));
        for (double t : {0.5, 2.0, 3.0}) CHECK(cpig_divergence(battery[i], g, Theta(t)).value >= -1e-9);
    }
}

TEST_CASE("jcpig") {
    const std::vector<DistributionSpec> pair{kU01, kPow2};
    CHECK_NEAR(jcpig(pair, kHalf, Theta(2)).value, 1.0 / 120.0, 1e-12);
    CHECK_NEAR(jcpig(pair, kHalf, Theta(0.5)).value, 0.0108603566316090, 1e-10);
    const std::vector<DistributionSpec> same{kU01, kU01, kU01};
    CHECK(jcpig(same, MixWeights({0.2, 0.3, 0.5}), Theta(2)).value == 0.0);
    CHECK_THROWS_KIND(jcpig(std::vector<DistributionSpec>{kU01}, MixWeights({1.0}), Theta(2)), ErrorKind::Domain);
    CHECK_THROWS_KIND(jcpig(pair, MixWeights({1.0}), Theta(2)), ErrorKind::InvalidWeights);
}

TEST_CASE("mixture decomposition is reported with both sides") {
    const std::vector<DistributionSpec> pair{kU01, kPow2};
    const auto r = jcpig_mixture_decomposition(pair, kHalf, Theta(2));
    CHECK_NEAR(r.jcpig_value, 1.0 / 120.0, 1e-10);
    CHECK_NEAR(r.weighted_divergence_sum, 0.025, 1e-9);
    const auto same = jcpig_mixture_decomposition(std::vector<DistributionSpec>{kU01, kU01}, kHalf, Theta(2));
    CHECK(same.jcpig_value == 0.0);
    CHECK(same.weighted_divergence_sum == 0.0);
    const auto at_one = jcpig_mixture_decomposition(pair, kHalf, Theta(1));
    CHECK(std::isfinite(at_one.jcpig_value));
    CHECK(std::isfinite(at_one.weighted_divergence_sum));
}

TEST_CASE("fractional cumulative past entropy") {
    CHECK_NEAR(fcpe(kU01, 1.0).value, 0.25, 1e-12);
    CHECK_NEAR(fcpe(kU01, 0.5).value, 0.313328534328875, 1e-9);
    CHECK_NEAR(fcpe(DistributionSpec::uniform(0, 2), 0.5).value, 2 * 0.313328534328875, 1e-9);
    CHECK_THROWS_KIND(fcpe(kU01, 1.5), ErrorKind::Domain);
    CHECK_THROWS_KIND(fcpe(kU01, 0.0), ErrorKind::Domain);
}

TEST_CASE("jfcpe") {
    const std::vector<DistributionSpec> pair{kU01, kPow2};
    CHECK_NEAR(jfcpe(pair, kHalf, 1.0).value, 0.0160955983799954, 1e-10);
    CHECK_NEAR(jfcpe(pair, MixWeights({0.25, 0.75}), 0.5).value, 0.00861630712551185, 1e-9);
    CHECK(jfcpe(std::vector<DistributionSpec>{kPow2, kPow2}, kHalf, 0.5).value == 0.0);
}

TEST_CASE("cumulative past taneja entropy") {
    CHECK_NEAR(cpte(kU01, 2.0).value, 2.0 / 9.0, 1e-10);
    CHECK_NEAR(cpte(kU01, 1.0).value, 0.25, 1e-12);
    CHECK_NEAR(cpte(DistributionSpec::uniform(0, 3), 2.0).value, 2.0 / 3.0, 1e-9);
    CHECK_THROWS_KIND(cpte(kU01, 0.0), ErrorKind::Domain);
}

TEST_CASE("jcpte") {
    const std::vector<DistributionSpec> pair{kU01, kPow2};
    const auto small = jcpte(pair, kHalf, 0.5);
    CHECK_NEAR(small.value, 0.0180142571903446, 1e-9);
    CHECK(small.warnings.empty());
    const auto large = jcpte(pair, kHalf, 2.0);
    CHECK_NEAR(large.value, 0.00678088032400091, 1e-9);
    CHECK_FALSE(large.warnings.empty());
    CHECK(jcpte(std::vector<DistributionSpec>{kU01, kU01}, kHalf, 2.0).value == 0.0);
}

TEST_CASE("jensen measures are nonnegative where the kernel is concave or convex") {
    const auto battery = piecewise_battery(40, 81);
    for (std::size_t i = 0; i + 1 < battery.size(); ++i) {
        const std::vector<DistributionSpec> pair{battery[i], battery[i + 1]};
        const MixWeights w({0.35, 0.65});
        for (double t : {0.3, 0.5, 1.0, 2.0, 4.0}) CHECK(jcpig(pair, w, Theta(t)).value >= -1e-9);
        for (double q : {0.25, 0.5, 0.75, 1.0}) CHECK(jfcpe(pair, w, q).value >= -1e-9);
        for (double q : {0.5, 0.75, 1.0}) CHECK(jcpte(pair, w, q).value >= -1e-9);
    }
}

TEST_CASE("jcpte can be negative below q one half") {
    // -u^q ln u is convex near u = 1 for q < 1/2; two point masses there expose it.
    double worst = kInf;
    const auto battery = piecewise_battery(40, 81);
    for (std::size_t i = 0; i + 1 < battery.size(); ++i) {
        const std::vector<DistributionSpec> pair{battery[i], battery[i + 1]};
        worst = std::min(worst, jcpte(pair, MixWeights({0.35, 0.65}), 0.25).value);
    }
    CHECK(worst < 0.0);
}

TEST_CASE("weight permutation invariance") {
    const auto battery = piecewise_battery(3, 5);
    const std::vector<DistributionSpec> abc{battery[0], battery[1], battery[2]};
    const std::vector<DistributionSpec> cab{battery[2], battery[0], battery[1]};
    const MixWeights w1({0.2, 0.3, 0.5});
    const MixWeights w2({0.5, 0.2, 0.3});
    CHECK_NEAR(jcpig(abc, w1, Theta(2)).value, jcpig(cab, w2, Theta(2)).value, 1e-12);
    CHECK_NEAR(jfcpe(abc, w1, 0.5).value, jfcpe(cab, w2, 0.5).value, 1e-12);
    CHECK_NEAR(jcpte(abc, w1, 0.75).value, jcpte(cab, w2, 0.75).value, 1e-12);
}
