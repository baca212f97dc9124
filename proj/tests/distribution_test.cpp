#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radius/distribution.hpp"
#include "radius/rng.hpp"

#include "oracles.hpp"

using Catch::Approx;
using radius::cramers_v;
using radius::homogeneity_test;
using radius::jsd;
using radius::RngStream;
using radius::to_distribution;
using radius::tvd;
using radius::wasserstein_1d;

namespace {

radius::ResponseDistribution random_distribution(RngStream& rng, std::size_t k) {
    std::vector<std::int64_t> counts(k);
    for (auto& c : counts) c = static_cast<std::int64_t>(rng.next_u64() % 400);
    if (std::accumulate(counts.begin(), counts.end(), std::int64_t{0}) == 0) {
        counts[0] = 1;
    }
    return to_distribution(counts);
}

}  // namespace

TEST_CASE("tvd on the worked examples") {
    CHECK(tvd(to_distribution({766, 1457}), to_distribution({301, 634})) ==
          Approx(0.022654).margin(1e-4));
    CHECK(tvd(to_distribution({360, 935, 850}), to_distribution({4, 871, 60})) ==
          Approx(0.495653).margin(1e-4));
    CHECK(tvd(to_distribution({56, 52, 75, 179, 91, 197, 4}),
              to_distribution({2, 0, 0, 1, 8, 510, 412})) == Approx(0.680871).margin(1e-4));
}

TEST_CASE("tvd is a bounded metric") {
    RngStream rng(21);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t k = 2 + rng.next_u64() % 7;
        const auto a = random_distribution(rng, k);
        const auto b = random_distribution(rng, k);
        const auto c = random_distribution(rng, k);

        const double ab = tvd(a, b);
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= 1.0);
        REQUIRE(ab == tvd(b, a));
        REQUIRE(tvd(a, a) == 0.0);
        REQUIRE(ab <= tvd(a, c) + tvd(c, b) + 1e-12);
    }
}

TEST_CASE("tvd equals the exhaustive subset maximum") {
    RngStream rng(22);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t k = 2 + rng.next_u64() % 9;
        const auto a = random_distribution(rng, k);
        const auto b = random_distribution(rng, k);
        REQUIRE(tvd(a, b) ==
                Approx(oracles::tvd_subset_oracle(a.proportions, b.proportions)).margin(1e-12));
    }
}

TEST_CASE("homogeneity test on the worked two-option example") {
    const auto human = to_distribution({766, 1457});
    const auto agent = to_distribution({301, 634});

    // oracle: statistic from the margins, computed independently
    const double n = 2223.0 + 935.0;
    const double cols[2] = {766.0 + 301.0, 1457.0 + 634.0};
    const double rows[2] = {2223.0, 935.0};
    const double observed[2][2] = {{766.0, 1457.0}, {301.0, 634.0}};
    double expected_stat = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double e = rows[r] * cols[c] / n;
            expected_stat += (observed[r][c] - e) * (observed[r][c] - e) / e;
        }
    }

    const auto result = homogeneity_test(human, agent, 0.05);
    CHECK(result.statistic == Approx(expected_stat).margin(1e-10));
    CHECK(result.statistic == Approx(1.509888).margin(1e-4));
    CHECK(result.df == 1);
    CHECK(result.p_value == Approx(0.219156).margin(1e-4));
    CHECK(result.dh == 1);
    CHECK_FALSE(result.degenerate);
}

TEST_CASE("identical counts are perfectly homogeneous") {
    const auto d = to_distribution({10, 20, 30});
    const auto result = homogeneity_test(d, d, 0.05);
    CHECK(result.statistic == Approx(0.0).margin(1e-12));
    CHECK(result.p_value == 1.0);
    CHECK(result.dh == 1);
}

TEST_CASE("disjoint supports are maximally heterogeneous") {
    const auto result =
        homogeneity_test(to_distribution({1000, 0}), to_distribution({0, 1000}), 0.05);
    CHECK(result.statistic == Approx(2000.0).margin(1e-9));
    CHECK(result.df == 1);
    CHECK(result.p_value < 1e-10);
    CHECK(result.dh == 0);
}

TEST_CASE("single shared column is degenerate") {
    const auto result = homogeneity_test(to_distribution({5, 0}), to_distribution({3, 0}), 0.05);
    CHECK(result.degenerate);
    CHECK(result.dh == 1);
    CHECK(result.p_value == 1.0);
    CHECK(result.statistic == 0.0);
    CHECK(result.df == 0);
}

TEST_CASE("empty shared columns are dropped from the table") {
    const auto with_zero =
        homogeneity_test(to_distribution({766, 0, 1457}), to_distribution({301, 0, 634}), 0.05);
    CHECK(with_zero.df == 1);
    CHECK(with_zero.statistic == Approx(1.509888).margin(1e-4));
}

TEST_CASE("homogeneity p-value is invariant under shared column permutation") {
    RngStream rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t k = 2 + rng.next_u64() % 6;
        const auto a = random_distribution(rng, k);
        const auto b = random_distribution(rng, k);

        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_u64() % i]);

        std::vector<std::int64_t> pa(k), pb(k);
        for (std::size_t i = 0; i < k; ++i) {
            pa[i] = a.counts[perm[i]];
            pb[i] = b.counts[perm[i]];
        }
        const auto base = homogeneity_test(a, b, 0.05);
        const auto permuted = homogeneity_test(to_distribution(pa), to_distribution(pb), 0.05);
        if (base.degenerate) {
            REQUIRE(permuted.degenerate);
        } else {
            REQUIRE(permuted.p_value == Approx(base.p_value).margin(1e-12));
        }
    }
}

TEST_CASE("cramers_v on the worked examples") {
    CHECK(cramers_v(to_distribution({766, 1457}), to_distribution({301, 634})) ==
          Approx(0.021866).margin(1e-4));
    const auto d = to_distribution({4, 9, 2});
    CHECK(cramers_v(d, d) == Approx(0.0).margin(1e-9));
    CHECK(cramers_v(to_distribution({1000, 0}), to_distribution({0, 1000})) ==
          Approx(1.0).margin(1e-12));
}

TEST_CASE("cramers_v squared times N equals the homogeneity statistic") {
    RngStream rng(24);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t k = 2 + rng.next_u64() % 6;
        const auto a = random_distribution(rng, k);
        const auto b = random_distribution(rng, k);
        const auto ht = homogeneity_test(a, b, 0.05);
        if (ht.degenerate) continue;
        const double v = cramers_v(a, b);
        const double n = static_cast<double>(a.total + b.total);
        REQUIRE(v * v * n == Approx(ht.statistic).margin(1e-8));
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("jsd on the worked favor/oppose example uses the natural log") {
    CHECK(jsd(to_distribution({1243, 824}), to_distribution({188, 747})) ==
          Approx(0.086330).margin(1e-5));
}

TEST_CASE("jsd endpoints") {
    const auto d = to_distribution({5, 7, 11});
    CHECK(jsd(d, d) == Approx(0.0).margin(1e-15));
    CHECK(jsd(to_distribution({1, 0}), to_distribution({0, 1})) ==
          Approx(std::log(2.0)).margin(1e-12));
}

TEST_CASE("jsd is symmetric and bounded by ln 2") {
    RngStream rng(25);
    for (int iter = 0; iter < 500; ++iter) {
        const std::size_t k = 2 + rng.next_u64() % 7;
        const auto a = random_distribution(rng, k);
        const auto b = random_distribution(rng, k);
        const double ab = jsd(a, b);
        REQUIRE(ab == Approx(jsd(b, a)).margin(1e-15));
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= std::log(2.0) + 1e-12);
    }
}

TEST_CASE("wasserstein on the worked four-option example") {
    CHECK(wasserstein_1d(to_distribution({30, 236, 373, 17}), to_distribution({0, 703, 232, 0})) ==
          Approx(0.418030).margin(1e-5));
}

TEST_CASE("wasserstein endpoints and the two-option identity") {
    const auto d = to_distribution({5, 7, 11});
    CHECK(wasserstein_1d(d, d) == 0.0);
    CHECK(wasserstein_1d(to_distribution({1, 0, 0}), to_distribution({0, 0, 1})) ==
          Approx(2.0).margin(1e-12));

    RngStream rng(26);
    for (int iter = 0; iter < 200; ++iter) {
        const auto a = random_distribution(rng, 2);
        const auto b = random_distribution(rng, 2);
        REQUIRE(wasserstein_1d(a, b) ==
                Approx(std::fabs(a.proportions[0] - b.proportions[0])).margin(1e-12));
    }
}

TEST_CASE("metrics reject mismatched option counts") {
    const auto two = to_distribution({1, 1});
    const auto three = to_distribution({1, 1, 1});
    CHECK_THROWS_AS(tvd(two, three), radius::ValidationError);
    CHECK_THROWS_AS(jsd(two, three), radius::ValidationError);
    CHECK_THROWS_AS(wasserstein_1d(two, three), radius::ValidationError);
    CHECK_THROWS_AS(homogeneity_test(two, three, 0.05), radius::ValidationError);
}
