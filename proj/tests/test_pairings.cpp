#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "polaron/errors.hpp"
#include "polaron/pairings.hpp"

using namespace polaron;

TEST_CASE("enumerate_pairings counts and validity") {
    CHECK(enumerate_pairings(1).size() == 1);
    CHECK(enumerate_pairings(1)[0].pairs == std::vector<std::pair<int, int>>{{1, 2}});

    const std::uint64_t expected[] = {1, 3, 15, 105, 945};
    for (int n = 1; n <= 5; ++n) {
        auto ps = enumerate_pairings(n);
        CHECK(ps.size() == expected[n - 1]);
        CHECK(ps.size() == double_factorial_odd(n));
        for (const auto& p : ps) CHECK(p.valid());
        // no duplicates
        std::set<std::vector<std::pair<int, int>>> uniq;
        for (const auto& p : ps) uniq.insert(p.pairs);
        CHECK(uniq.size() == ps.size());
    }
}

TEST_CASE("enumerate_pairings matches the exhaustive permutation filter") {
    for (int n = 1; n <= 4; ++n) {
        auto filtered = oracle::wick_by_filter(n);
        auto ps = enumerate_pairings(n);
        REQUIRE(ps.size() == filtered.size());
        for (const auto& p : ps) CHECK(filtered.count(p.pairs) == 1);
    }
}

TEST_CASE("n=2 pairings are exactly the three expected ones") {
    auto ps = enumerate_pairings(2);
    std::set<std::vector<std::pair<int, int>>> got;
    for (const auto& p : ps) got.insert(p.pairs);
    std::set<std::vector<std::pair<int, int>>> want = {
        {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}};
    CHECK(got == want);
}

TEST_CASE("cap is enforced") {
    CHECK_THROWS_AS(enumerate_pairings(7), SizeLimitError);
    CHECK_THROWS_AS(enumerate_pairings(0), SizeLimitError);
    CHECK_THROWS_AS(enumerate_dyck(9, 8), SizeLimitError);
    CHECK_NOTHROW(enumerate_pairings(7, 8));
}

TEST_CASE("is_interlacing examples and counts") {
    Pairing split{{{1, 2}, {3, 4}}};
    Pairing nested{{{1, 4}, {2, 3}}};
    Pairing crossed{{{1, 3}, {2, 4}}};
    CHECK_FALSE(is_interlacing(split));
    CHECK(is_interlacing(nested));
    CHECK(is_interlacing(crossed));

    // regression counts from exhaustive enumeration
    const std::size_t expected[] = {1, 2, 10, 74, 706};
    for (int n = 1; n <= 5; ++n) {
        std::size_t count = 0;
        for (const auto& p : enumerate_pairings(n))
            if (is_interlacing(p)) ++count;
        CHECK(count == expected[n - 1]);
    }
}

TEST_CASE("pairing_to_dyck examples") {
    CHECK(pairing_to_dyck(Pairing{{{1, 2}}}).steps == std::vector<int>{-1, +1});
    CHECK(pairing_to_dyck(Pairing{{{1, 3}, {2, 4}}}).steps ==
          std::vector<int>{-1, -1, +1, +1});
    CHECK(pairing_to_dyck(Pairing{{{1, 2}, {3, 4}}}).steps ==
          std::vector<int>{-1, +1, -1, +1});
}

TEST_CASE("pairing_to_dyck always lands in the Dyck set") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : enumerate_pairings(n)) CHECK(pairing_to_dyck(p).valid());
}

TEST_CASE("interlacing iff strictly negative interior prefix sums of the path") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : enumerate_pairings(n)) {
            auto d = pairing_to_dyck(p);
            bool strict = true;
            int sum = 0;
            for (std::size_t j = 0; j + 1 < d.steps.size(); ++j) {
                sum += d.steps[j];
                if (sum >= 0) strict = false;
            }
            CHECK(is_interlacing(p) == strict);
        }
    }
}

TEST_CASE("enumerate_dyck counts match Catalan and the sign-sequence filter") {
    const std::uint64_t expected[] = {1, 2, 5, 14, 42, 132};
    for (int n = 1; n <= 6; ++n) {
        auto paths = enumerate_dyck(n);
        CHECK(paths.size() == expected[n - 1]);
        CHECK(paths.size() == catalan(n));
        auto filtered = oracle::dyck_by_filter(n);
        REQUIRE(paths.size() == filtered.size());
        std::set<std::vector<int>> got;
        for (const auto& p : paths) {
            CHECK(p.valid());
            got.insert(p.steps);
        }
        for (const auto& steps : filtered) CHECK(got.count(steps) == 1);
    }
}

TEST_CASE("fibers of pairing_to_dyck partition W_2n") {
    for (int n = 1; n <= 5; ++n) {
        std::map<std::vector<int>, std::size_t> fiber;
        for (const auto& p : enumerate_pairings(n)) ++fiber[pairing_to_dyck(p).steps];
        // every fiber key is a Dyck path, fibers cover all of W_2n
        std::size_t total = 0;
        for (const auto& [steps, count] : fiber) {
            DyckPath d{steps};
            CHECK(d.valid());
            total += count;
        }
        CHECK(total == double_factorial_odd(n));
        if (n <= 6) CHECK(fiber.size() == catalan(n));
    }
}

TEST_CASE("crossing_table examples") {
    auto t1 = crossing_table(Pairing{{{1, 2}}});
    CHECK(t1.sets == std::vector<std::uint32_t>{0, 1, 0});

    auto t2 = crossing_table(Pairing{{{1, 3}, {2, 4}}});
    CHECK(t2.sets == std::vector<std::uint32_t>{0, 0b01, 0b11, 0b10, 0});

    auto t3 = crossing_table(Pairing{{{1, 4}, {2, 3}}});
    CHECK(t3.sets == std::vector<std::uint32_t>{0, 0b01, 0b11, 0b01, 0});
}

TEST_CASE("crossing_table invariants on all pairings") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& p : enumerate_pairings(n)) {
            auto t = crossing_table(p);
            CHECK(t.sets.front() == 0u);
            CHECK(t.sets.back() == 0u);
            std::vector<int> toggle_count(static_cast<std::size_t>(n) + 1, 0);
            for (int j = 1; j <= 2 * n; ++j) {
                std::uint32_t diff = t.sets[static_cast<std::size_t>(j)] ^
                                     t.sets[static_cast<std::size_t>(j - 1)];
                // consecutive sets differ by exactly one element, the toggle
                CHECK(std::popcount(diff) == 1);
                CHECK(diff == (1u << (t.toggles[static_cast<std::size_t>(j - 1)] - 1)));
                ++toggle_count[static_cast<std::size_t>(
                    t.toggles[static_cast<std::size_t>(j - 1)])];
            }
            for (int i = 1; i <= n; ++i)
                CHECK(toggle_count[static_cast<std::size_t>(i)] == 2);
            // membership rule
            for (int j = 0; j <= 2 * n; ++j)
                for (int i = 1; i <= n; ++i) {
                    const auto& [a, b] = p.pairs[static_cast<std::size_t>(i - 1)];
                    CHECK(t.member(i, j) == (a <= j && j < b));
                }
        }
    }
}

TEST_CASE("dyck_factorize examples") {
    auto f1 = dyck_factorize(DyckPath{{-1, +1}});
    CHECK(f1.prefix.steps.empty());
    CHECK(f1.irreducible.steps == std::vector<int>{-1, +1});

    auto f2 = dyck_factorize(DyckPath{{-1, +1, -1, +1}});
    CHECK(f2.prefix.steps == std::vector<int>{-1, +1});
    CHECK(f2.irreducible.steps == std::vector<int>{-1, +1});

    auto f3 = dyck_factorize(DyckPath{{-1, -1, +1, +1}});
    CHECK(f3.prefix.steps.empty());
    CHECK(f3.irreducible.steps == std::vector<int>{-1, -1, +1, +1});
}

TEST_CASE("dyck_factorize reconstructs, suffix irreducible, counts consistent") {
    for (int n = 1; n <= 6; ++n) {
        std::map<std::size_t, std::size_t> by_suffix_length;
        for (const auto& path : enumerate_dyck(n)) {
            auto f = dyck_factorize(path);
            // concatenation reproduces the input
            std::vector<int> cat = f.prefix.steps;
            cat.insert(cat.end(), f.irreducible.steps.begin(), f.irreducible.steps.end());
            CHECK(cat == path.steps);
            CHECK_FALSE(f.irreducible.steps.empty());
            // suffix has strictly negative interior prefix sums
            int sum = 0;
            for (std::size_t j = 0; j + 1 < f.irreducible.steps.size(); ++j) {
                sum += f.irreducible.steps[j];
                CHECK(sum < 0);
            }
            if (!f.prefix.steps.empty()) CHECK(f.prefix.valid());
            ++by_suffix_length[f.irreducible.steps.size()];
        }
        // summing (irreducible count of length 2m) x Catalan(n-m) over m
        // recovers Catalan(n); the group sizes realize exactly that product
        std::size_t total = 0;
        for (const auto& [len, count] : by_suffix_length) {
            const int m = static_cast<int>(len) / 2;
            std::size_t irreducible_m = 0;
            for (const auto& q : enumerate_dyck(m)) {
                auto fq = dyck_factorize(q);
                if (fq.prefix.steps.empty()) ++irreducible_m;
            }
            const std::uint64_t prefix_count = (m == n) ? 1 : catalan(n - m);
            CHECK(count == irreducible_m * prefix_count);
            total += count;
        }
        CHECK(total == catalan(n));
    }
}
