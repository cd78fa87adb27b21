#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "consec/interval.hpp"

namespace consec {

/// Rank sizes with the breaking rank b: the largest r whose size falls below
/// the grid maximum N+1-r (-1 when no rank does). Above b the sizes are
/// exactly N+1-r, hence strictly decreasing.
struct RankProfile {
    std::vector<int> sizes;
    int breaking_rank = -1;
    int peak_rank = 0;  // highest rank attaining the maximum size
};

RankProfile rank_profile(const Interval& I);

bool is_rank_unimodal(const Interval& I);

/// The order-preserving injection from a selection of rank-r elements into
/// rank r+1: representatives with smallest left endpoint give a set of start
/// positions I_s; with k the smallest start outside I_s, a start i maps to
/// the one-longer window at i (i < k) or i-1 (i > k).
struct RankInjection {
    /// (element, image) index pairs, in the order of the input selection.
    std::vector<std::pair<int, int>> mapping;
    int chosen_k = 0;
};

/// Requires |selection| <= min(a_r, N - r). Elements must be at rank r.
RankInjection rank_injection(const Interval& I, int r, std::span<const int> selection);

/// l_i pairwise-disjoint chains, each intersecting every one of the i largest
/// rank levels (which occupy the consecutive ranks [rank_lo, rank_hi]).
struct ChainFamily {
    std::vector<std::vector<int>> chains;  // element indices, bottom-up
    int rank_lo = 0;
    int rank_hi = 0;
};

ChainFamily rank_intersecting_chains(const Interval& I, int i);

/// Size of the largest k-family (no chain of k+1 elements), by exhaustive
/// branch-and-bound seeded with the k largest rank levels. Throws
/// CapExceededError when the interval has more than max_elements elements.
int max_k_family_oracle(const Interval& I, int k, int max_elements = 22);

struct SpernerResult {
    bool strongly_sperner = false;
    enum class Method { Oracle, Constructive } method = Method::Oracle;
};

/// Verifies the strongly Sperner property. Within the oracle cap this checks
/// max_k_family_oracle(I, k) = sum of the k largest rank sizes for every k
/// and also exercises the constructive chain families; beyond the cap only
/// the constructive route runs and the result is flagged accordingly.
SpernerResult is_strongly_sperner(const Interval& I, int max_oracle_elements = 22);

/// Every pair of elements has a unique meet and a unique join within I.
bool is_lattice(const Interval& I);

}  // namespace consec
