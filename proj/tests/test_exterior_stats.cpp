#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "consec/enumerate.hpp"
#include "consec/errors.hpp"
#include "consec/exterior_stats.hpp"
#include "consec/mobius.hpp"
#include "consec/rank_analysis.hpp"
#include "consec/topology.hpp"
#include "test_util.hpp"

using namespace consec;
using testutil::all_permutations;

namespace {

Permutation P(const std::string& text) { return parse_permutation(text); }

}  // namespace

TEST_CASE("exterior length table matches the known rows up to n = 7") {
    const auto t = exterior_length_table(7);
    CHECK(t.rows[0] == std::vector<std::int64_t>{2});
    CHECK(t.rows[1] == std::vector<std::int64_t>{4, 2});
    CHECK(t.rows[2] == std::vector<std::int64_t>{12, 10, 2});
    CHECK(t.rows[3] == std::vector<std::int64_t>{48, 58, 12, 2});
    CHECK(t.rows[4] == std::vector<std::int64_t>{280, 306, 118, 14, 2});
    CHECK(t.rows[5] == std::vector<std::int64_t>{1864, 2186, 822, 150, 16, 2});
    for (int n = 2; n <= 7; ++n) {
        std::int64_t sum = 0;
        for (auto c : t.rows[static_cast<std::size_t>(n - 2)]) sum += c;
        CHECK(sum == factorial(n));
    }
    CHECK(t.count(5, 2) == 58);
    CHECK(t.count(5, 5) == 0);
    CHECK_THROWS_AS(exterior_length_table(11), CapExceededError);
}

TEST_CASE("exterior counts agree with a direct per-permutation loop at n <= 6") {
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::int64_t> expect(static_cast<std::size_t>(n - 1), 0);
        std::vector<std::int64_t> bifix_expect(static_cast<std::size_t>(n - 1), 0);
        std::int64_t no_carrier = 0;
        for (const auto& tau : all_permutations(n)) {
            ++expect[static_cast<std::size_t>(exterior_length(tau) - 1)];
            for (int i = 1; i < n; ++i)
                if (prefix(tau, i) == suffix(tau, i))
                    ++bifix_expect[static_cast<std::size_t>(i - 1)];
            if (n >= 3 && contains(exterior(tau), interior(tau))) ++no_carrier;
        }
        const auto stats = exhaustive_stats(n);
        CHECK(stats.exterior_counts == expect);
        CHECK(stats.bifix_event_counts == bifix_expect);
        CHECK(stats.no_carrier == no_carrier);
    }
}

TEST_CASE("closed forms: diagonal 2, sub-diagonal 2n+2, divisibility by 4") {
    for (int n = 2; n <= 8; ++n) {
        const auto stats = exhaustive_stats(n);
        CHECK(stats.exterior_counts[static_cast<std::size_t>(n - 2)] == 2);
        if (n >= 4) CHECK(count_exterior_n_minus_2(n) == 2 * n + 2);
        if (n >= 3) CHECK(non_overlapping_divisibility(n));
    }
    CHECK(count_exterior_n_minus_2(5) == 12);
    CHECK(count_exterior_n_minus_2(4) == 10);
    CHECK_THROWS_AS(count_exterior_n_minus_2(3), InvalidInputError);
}

TEST_CASE("no-carrier counts match the known sequence up to n = 7") {
    CHECK(no_carrier_counts(7) ==
          std::vector<std::int64_t>{0, 4, 12, 84, 548, 4172});
}

TEST_CASE("bifix probabilities") {
    CHECK(bifix_probability_exact(6, 3) == Rational(1, 6));
    CHECK(bifix_probability_exact(4, 2) == Rational(1, 2));
    CHECK(bifix_probability_exact(5, 4) == Rational(2, factorial(5)));  // only the monotones
    for (int n = 2; n <= 8; ++n) {
        const auto stats = exhaustive_stats(n);
        for (int i = 1; i <= n / 2; ++i)
            CHECK(bifix_probability_exact(stats, i) == Rational(1, factorial(i)));
        CHECK(bifix_probability_exact(stats, n - 1) == Rational(2, factorial(n)));
    }
}

TEST_CASE("xgem bound") {
    CHECK(xgem_bound(10, 1) >= 1.0);
    // m beyond n/2: only the tail terms remain
    const int root7 = 2;  // floor(sqrt 7)
    const double expect7 =
        (7.0 - root7 - 3) / factorial(root7) + 0.0 / 2.0 + 2.0 / factorial(7);
    CHECK(xgem_bound(7, 4) == doctest::Approx(expect7));
    // empirical P_10(|x| >= 3) from the published table row for n = 10
    const double p10 =
        (588898.0 + 150388 + 30238 + 2904 + 270 + 22 + 2) / static_cast<double>(factorial(10));
    CHECK(p10 <= xgem_bound(10, 3));
    // bound decreases in m
    for (int m = 1; m + 1 <= 9; ++m) CHECK(xgem_bound(10, m + 1) <= xgem_bound(10, m) + 1e-12);
    CHECK_THROWS_AS(xgem_bound(5, 0), InvalidInputError);
    CHECK_THROWS_AS(xgem_bound(5, 5), InvalidInputError);
}

TEST_CASE("expected exterior length") {
    CHECK(expected_exterior_exact(2) == Rational(1));
    CHECK(expected_exterior_exact(5) == Rational(1 * 48 + 2 * 58 + 3 * 12 + 4 * 2, factorial(5)));
    // lower bound sum_{m<=n/2} 1/m!
    for (int n = 2; n <= 8; ++n) {
        Rational lower(0);
        for (int m = 1; m <= n / 2; ++m) lower = lower + Rational(1, factorial(m));
        CHECK(expected_exterior_exact(n) >= lower);
    }
}

TEST_CASE("exterior length is invariant under reversal and complement, n <= 8") {
    for (int n = 2; n <= 8; ++n)
        for (const auto& tau : all_permutations(n)) {
            const int x = exterior_length(tau);
            CHECK(exterior_length(reversal(tau)) == x);
            CHECK(exterior_length(complement(tau)) == x);
        }
}

TEST_CASE("non-overlapping permutations split into orbits of size exactly 4") {
    for (int n = 3; n <= 8; ++n) {
        std::set<Permutation> seen;
        std::int64_t orbits = 0;
        std::int64_t total = 0;
        for (const auto& tau : all_permutations(n)) {
            if (!is_non_overlapping(tau)) continue;
            ++total;
            if (seen.count(tau)) continue;
            const Permutation r = reversal(tau), c = complement(tau), rc = reversal(c);
            // all four images distinct and non-overlapping
            const std::set<Permutation> orbit{tau, r, c, rc};
            CHECK(orbit.size() == 4);
            for (const auto& p : orbit) {
                CHECK(is_non_overlapping(p));
                seen.insert(p);
            }
            ++orbits;
        }
        CHECK(orbits * 4 == total);
    }
}

TEST_CASE("sharded enumeration is shard-count independent") {
    for (int shards : {1, 3, 8, 17}) {
        const auto stats = exhaustive_stats(7, /*threads=*/2, shards);
        CHECK(stats.exterior_counts ==
              std::vector<std::int64_t>{1864, 2186, 822, 150, 16, 2});
        CHECK(stats.no_carrier == 4172);
    }
}

TEST_CASE("lexicographic unranking and iteration") {
    CHECK(permutation_at_rank(3, 0) == P("123"));
    CHECK(permutation_at_rank(3, 5) == P("321"));
    // ranks enumerate S_n in lexicographic order without repeats
    std::vector<Permutation> seen;
    for_each_permutation(4, [&](const std::uint8_t* vals, int len) {
        seen.push_back(unchecked_from_ranks(vals, len));
    });
    CHECK(seen.size() == 24);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    for (std::int64_t r = 0; r < 24; ++r) CHECK(permutation_at_rank(4, r) == seen[static_cast<std::size_t>(r)]);
}

TEST_CASE("sampling is reproducible and consistent with exact values") {
    const auto a = sample_statistic(7, 20000, 42, SampleStat::ExteriorLengthMean);
    const auto b = sample_statistic(7, 20000, 42, SampleStat::ExteriorLengthMean, std::nullopt,
                                    /*threads=*/3);
    CHECK(a.point_estimate == b.point_estimate);
    CHECK(a.standard_error == b.standard_error);
    const auto c = sample_statistic(7, 20000, 43, SampleStat::ExteriorLengthMean);
    CHECK(a.point_estimate != c.point_estimate);  // seed actually matters

    const double exact = expected_exterior_exact(7).to_double();
    CHECK(std::abs(a.point_estimate - exact) <= 3.0 * a.standard_error);

    const auto carrier = sample_statistic(7, 20000, 42, SampleStat::HasCarrier);
    const double carrier_exact =
        1.0 - static_cast<double>(exhaustive_stats(7).no_carrier) / factorial(7);
    CHECK(std::abs(carrier.point_estimate - carrier_exact) <= 3.0 * carrier.standard_error);

    const auto contains123 =
        sample_statistic(8, 20000, 42, SampleStat::ContainsSigma, P("123"));
    std::int64_t hits = 0;
    for (const auto& tau : all_permutations(8))
        if (contains(P("123"), tau)) ++hits;
    const double contains_exact = static_cast<double>(hits) / factorial(8);
    CHECK(std::abs(contains123.point_estimate - contains_exact) <=
          3.0 * contains123.standard_error);

    CHECK_THROWS_AS(sample_statistic(7, 100, 1, SampleStat::ContainsSigma), InvalidInputError);
}

TEST_CASE("sampled exterior mean at n = 10 sits within 3 SE of the exact value") {
    const double exact = expected_exterior_exact(10).to_double();
    const auto est = sample_statistic(10, 20000, 42, SampleStat::ExteriorLengthMean);
    CHECK(std::abs(est.point_estimate - exact) <= 3.0 * est.standard_error);
}

TEST_CASE("mu is zero for most tau: sampled conditional fraction at small n") {
    // exact conditional fraction over S_6 given sigma = 21
    std::int64_t zero = 0, applicable = 0;
    MobiusMemo memo;
    for (const auto& tau : all_permutations(6)) {
        if (!contains(P("21"), tau)) continue;
        ++applicable;
        if (mobius_recursive(P("21"), tau, false, &memo).value == 0) ++zero;
    }
    const double exact = static_cast<double>(zero) / static_cast<double>(applicable);
    const auto est = sample_statistic(6, 30000, 42, SampleStat::MuZeroGivenSigma, P("21"));
    CHECK(std::abs(est.point_estimate - exact) <= 3.0 * est.standard_error);
}

TEST_CASE("census matches exhaustive recomputation") {
    const auto res = census(5, CensusStat::ExteriorLength, std::nullopt);
    CHECK(res.aggregate == std::map<int, std::int64_t>{{1, 48}, {2, 58}, {3, 12}, {4, 2}});
    std::int64_t rank = 0;
    for (const auto& tau : all_permutations(5)) {
        CHECK(res.values[static_cast<std::size_t>(rank)] == exterior_length(tau));
        ++rank;
    }

    const auto cond = census(5, CensusStat::DisconnectedSubinterval, P("21"));
    std::int64_t expect_true = 0, expect_applicable = 0;
    for (const auto& tau : all_permutations(5)) {
        if (!contains(P("21"), tau)) continue;
        ++expect_applicable;
        if (has_disconnected_subinterval(P("21"), tau)) ++expect_true;
    }
    std::int64_t applicable = 0;
    for (const auto& [v, cnt] : cond.aggregate) applicable += cnt;
    CHECK(applicable == expect_applicable);
    CHECK(cond.aggregate.at(1) == expect_true);

    // identical across thread counts
    const auto res2 = census(5, CensusStat::ExteriorLength, std::nullopt, /*threads=*/4);
    CHECK(res.values == res2.values);
    CHECK(res.aggregate == res2.aggregate);

    // lattice census over S_4: [1, tau] is a lattice for exactly the 14
    // permutations with a monotone length-3 window
    const auto lat = census(4, CensusStat::Lattice, P("1"));
    CHECK(lat.aggregate == std::map<int, std::int64_t>{{0, 10}, {1, 14}});

    CHECK_THROWS_AS(census(11, CensusStat::ExteriorLength, std::nullopt), CapExceededError);
    CHECK_THROWS_AS(census(4, CensusStat::MuZero, std::nullopt), InvalidInputError);
}

TEST_CASE("xbar sits inside the interior whenever it is defined") {
    for (int n = 3; n <= 7; ++n)
        for (const auto& tau : all_permutations(n)) {
            const auto xb = detail::xbar(tau);
            if (!xb) continue;
            CHECK(contains(*xb, interior(tau)));
            CHECK(xb->size() == n - 2 * exterior_length(tau));
        }
    CHECK_FALSE(detail::xbar(P("12")).has_value());      // |x| = 1, n = 2
    CHECK(detail::xbar(P("132")).has_value());           // 2*1 < 3
    CHECK(*detail::xbar(P("132")) == P("1"));
}
