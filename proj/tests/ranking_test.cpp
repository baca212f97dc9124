#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "radius/ranking.hpp"

#include "oracles.hpp"

using Catch::Approx;
using radius::rank_correlation;
using radius::RngStream;
using radius::to_distribution;
using radius::top_group;
using radius::trm;

namespace {

// Table-style fixtures used across the suite.
const std::vector<std::int64_t> kQ1Human = {56, 52, 75, 179, 91, 197, 4};
const std::vector<std::int64_t> kQ1Agent = {2, 0, 0, 1, 8, 510, 412};
const std::vector<std::int64_t> kQ2Human = {2335, 2159, 273, 113, 27};
const std::vector<std::int64_t> kQ2Agent = {405, 517, 13, 0, 0};
const std::vector<std::int64_t> kQ5Human = {1243, 824};
const std::vector<std::int64_t> kQ5Agent = {188, 747};

}  // namespace

TEST_CASE("a dominant option forms a singleton top group") {
    RngStream rng(1);
    const auto group = top_group(to_distribution({100, 0, 0}), rng, 500, 0.95);
    CHECK(group.anchor_index == 0);
    CHECK(group.member_indices == std::vector<std::size_t>{0});
}

TEST_CASE("a 50/50 split keeps both options in the top group") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RngStream rng(seed);
        const auto group = top_group(to_distribution({50, 50}), rng, 1000, 0.95);
        REQUIRE(group.anchor_index == 0);
        REQUIRE(group.member_indices == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("exact count ties are group members outright") {
    RngStream rng(2);
    const auto group = top_group(to_distribution({10, 10, 0}), rng, 500, 0.95);
    CHECK(group.anchor_index == 0);
    CHECK(group.contains(0));
    CHECK(group.contains(1));
}

TEST_CASE("anchor always belongs to its group") {
    RngStream master(3);
    for (int iter = 0; iter < 100; ++iter) {
        RngStream gen = master.substream(std::to_string(iter));
        const std::size_t k = 2 + gen.next_u64() % 6;
        std::vector<std::int64_t> counts(k);
        for (auto& c : counts) c = static_cast<std::int64_t>(gen.next_u64() % 500);
        if (std::all_of(counts.begin(), counts.end(), [](auto c) { return c == 0; })) {
            counts[0] = 1;
        }
        const auto group = top_group(to_distribution(counts), gen, 300, 0.95);
        REQUIRE(group.contains(group.anchor_index));
        REQUIRE(group.intervals.size() == k);
    }
}

TEST_CASE("group membership grows with the confidence level") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RngStream rng_low(seed), rng_high(seed);
        const auto dist = to_distribution({197, 179, 91, 75, 56, 52, 4});
        const auto low = top_group(dist, rng_low, 800, 0.90);
        const auto high = top_group(dist, rng_high, 800, 0.99);
        for (std::size_t member : low.member_indices) {
            REQUIRE(high.contains(member));
        }
    }
}

TEST_CASE("trm matches the worked seven-option example") {
    RngStream rng(42);
    const auto human = to_distribution(kQ1Human);
    const auto agent = to_distribution(kQ1Agent);
    const auto group = top_group(human, rng, 1000, 0.95);
    CHECK(group.anchor_index == 5);
    CHECK(trm(human, agent, group) == 1);
}

TEST_CASE("trm is zero when the agent misses a clearly separated top option") {
    RngStream rng(42);
    const auto human = to_distribution(kQ5Human);
    const auto agent = to_distribution(kQ5Agent);
    const auto group = top_group(human, rng, 1000, 0.95);
    CHECK(group.member_indices == std::vector<std::size_t>{0});
    CHECK(trm(human, agent, group) == 0);
}

TEST_CASE("trm self-alignment holds for unique maxima") {
    RngStream master(4);
    for (int iter = 0; iter < 50; ++iter) {
        RngStream gen = master.substream(std::to_string(iter));
        const std::size_t k = 2 + gen.next_u64() % 6;
        std::vector<std::int64_t> counts(k);
        for (auto& c : counts) c = 1 + static_cast<std::int64_t>(gen.next_u64() % 200);
        counts[gen.next_u64() % k] += 300;  // force a unique max
        const auto dist = to_distribution(counts);
        const auto group = top_group(dist, gen, 300, 0.95);
        REQUIRE(trm(dist, dist, group) == 1);
    }
}

TEST_CASE("tied agent maxima count as a match if any tied index is in the group") {
    RngStream rng(5);
    const auto human = to_distribution({1000, 10});
    const auto group = top_group(human, rng, 500, 0.95);
    REQUIRE(group.member_indices == std::vector<std::size_t>{0});
    CHECK(trm(human, to_distribution({5, 5}), group) == 1);   // tie includes index 0
    CHECK(trm(human, to_distribution({4, 5}), group) == 0);
}

TEST_CASE("rank correlation on the worked examples") {
    const auto q1 = rank_correlation(to_distribution(kQ1Human), to_distribution(kQ1Agent));
    CHECK_FALSE(q1.degenerate);
    CHECK(q1.rc_norm == Approx(0.626131).margin(1e-5));

    const auto q2 = rank_correlation(to_distribution(kQ2Human), to_distribution(kQ2Agent));
    CHECK(q2.rc_norm == Approx(0.936041).margin(1e-5));

    const auto q3 = rank_correlation(to_distribution({360, 935, 850}), to_distribution({4, 871, 60}));
    CHECK(q3.rc_raw == 1.0);
    CHECK(q3.rc_norm == 1.0);
}

TEST_CASE("self correlation is one, reversal is zero") {
    const auto self = rank_correlation(to_distribution({9, 4, 7, 1, 2}), to_distribution({9, 4, 7, 1, 2}));
    CHECK(self.rc_norm == 1.0);

    const auto reversed =
        rank_correlation(to_distribution({50, 40, 30, 20, 10}), to_distribution({10, 20, 30, 40, 50}));
    CHECK(reversed.rc_raw == Approx(-1.0).margin(1e-12));
    CHECK(reversed.rc_norm == Approx(0.0).margin(1e-12));
}

TEST_CASE("flat counts are degenerate, not an error") {
    const auto rc = rank_correlation(to_distribution({7, 7, 7}), to_distribution({1, 5, 9}));
    CHECK(rc.degenerate);
    CHECK(rc.rc_raw == 0.0);
    CHECK(rc.rc_norm == 0.5);
}

TEST_CASE("rank correlation equals the simplified formula on tie-free input") {
    RngStream gen(6);
    int done = 0;
    while (done < 1000) {
        const std::size_t k = 2 + gen.next_u64() % 7;
        std::vector<std::int64_t> h(k), a(k);
        for (auto& c : h) c = static_cast<std::int64_t>(gen.next_u64() % 10000);
        for (auto& c : a) c = static_cast<std::int64_t>(gen.next_u64() % 10000);
        auto tie_free = [](const std::vector<std::int64_t>& v) {
            auto sorted = v;
            std::sort(sorted.begin(), sorted.end());
            return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        };
        if (!tie_free(h) || !tie_free(a)) continue;

        const auto rc = rank_correlation(to_distribution(h), to_distribution(a));
        REQUIRE(rc.rc_raw == Approx(oracles::simplified_spearman(h, a)).margin(1e-9));
        REQUIRE(rc.rc_norm >= 0.0);
        REQUIRE(rc.rc_norm <= 1.0);
        ++done;
    }
}

TEST_CASE("rank correlation is invariant under count scaling") {
    const auto base = rank_correlation(to_distribution(kQ1Human), to_distribution(kQ1Agent));
    std::vector<std::int64_t> scaled(kQ1Human.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = kQ1Human[i] * 7;
    const auto big = rank_correlation(to_distribution(scaled), to_distribution(kQ1Agent));
    CHECK(big.rc_raw == base.rc_raw);
}
