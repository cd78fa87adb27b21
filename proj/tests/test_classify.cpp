#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "consec/classify.hpp"
#include "consec/rng.hpp"
#include "test_util.hpp"

using namespace consec;
using testutil::all_permutations;

namespace {

Permutation P(const std::string& text) { return parse_permutation(text); }

}  // namespace

TEST_CASE("classification of [12, 213546]") {
    const auto r = run_classification(P("12"), P("213546"));
    CHECK(r.sigma == "1,2");
    CHECK(r.tau == "2,1,3,5,4,6");
    CHECK(r.rank_sizes == std::vector<int>{1, 3, 3, 2, 1});
    CHECK(r.breaking_rank == 1);
    CHECK_FALSE(r.chain);
    CHECK(r.mobius_value == -1);
    CHECK_FALSE(r.disconnected);
    REQUIRE(r.disconnection_witness.has_value());
    CHECK(r.disconnection_witness->pi == "2,1,3");
    CHECK(r.disconnection_witness->window == Window{1, 6});
    CHECK_FALSE(r.shellable);
    CHECK(r.rank_unimodal);
    CHECK(r.strongly_sperner);
    CHECK(r.sperner_method == "oracle");
    CHECK_FALSE(r.lattice);
    CHECK(r.exterior == std::string("2,1,3"));
    CHECK(r.interior == std::string("1,2,4,3"));
    CHECK(r.has_carrier == true);
    CHECK(r.cap_exceeded.empty());
}

TEST_CASE("classification of trivial and shellable intervals") {
    const auto t = run_classification(P("21"), P("21"));
    CHECK(t.rank_sizes == std::vector<int>{1});
    CHECK(t.chain);
    CHECK(t.mobius_value == 1);
    CHECK_FALSE(t.disconnected);
    CHECK(t.shellable);
    CHECK(t.lattice);
    CHECK(t.exterior == std::string("1"));
    CHECK_FALSE(t.interior.has_value());
    CHECK(t.has_carrier == true);  // |tau| = 2 convention

    const auto s = run_classification(P("1"), P("68372514"));
    CHECK(s.shellable);
    CHECK_FALSE(s.disconnection_witness.has_value());
    CHECK(s.exterior == std::string("2,4,1,3"));
    CHECK(s.cl_verified == true);

    const auto one = run_classification(P("1"), P("1"));
    CHECK_FALSE(one.exterior.has_value());
    CHECK_FALSE(one.has_carrier.has_value());
}

TEST_CASE("reports stay internally consistent across a sweep") {
    SplitMix64 rng(51);
    for (int trial = 0; trial < 80; ++trial) {
        const auto tau = random_permutation(2 + static_cast<int>(rng.next_below(6)), rng);
        const int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(tau.size())));
        const auto reds = window_reductions(tau, k);
        const auto sigma = reds[rng.next_below(reds.size())];
        const auto r = run_classification(sigma, tau);
        const int N = tau.size() - sigma.size();
        if (r.disconnected && N >= 3) CHECK_FALSE(r.shellable);
        if (r.shellable) CHECK_FALSE(r.disconnection_witness.has_value());
        if (r.disconnection_witness) CHECK_FALSE(r.shellable);
        if (r.chain) {
            CHECK(r.shellable);
            CHECK(r.lattice);
        }
        CHECK(r.rank_unimodal);
        CHECK(r.strongly_sperner);
        CHECK(r.mobius_value >= -1);
        CHECK(r.mobius_value <= 1);
    }
}

TEST_CASE("report JSON round-trips") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const auto tau = random_permutation(2 + static_cast<int>(rng.next_below(6)), rng);
        const auto reds = window_reductions(tau, 1 + static_cast<int>(rng.next_below(2)));
        const auto r = run_classification(reds[rng.next_below(reds.size())], tau);
        CHECK(report_from_json(report_to_json(r)) == r);
        // byte-stable emission
        CHECK(report_to_json(r) == report_to_json(report_from_json(report_to_json(r))));
    }
    const auto r = run_classification(P("12"), P("213546"));
    const auto text = report_to_text(r);
    CHECK(text.find("mobius: -1 (recursive-carrier)") != std::string::npos);
    CHECK(text.find("shellable: false") != std::string::npos);
}

TEST_CASE("cap flags surface in the report") {
    RunConfig tight;
    tight.max_cl_chains = 2;
    const auto r = run_classification(P("12"), P("213546"), tight);
    CHECK_FALSE(r.cl_verified.has_value());
    CHECK(r.cap_exceeded == std::vector<std::string>{"cl_verified"});
    CHECK(report_from_json(report_to_json(r)) == r);
}
