#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "consec/interval.hpp"
#include "consec/permutation.hpp"

namespace consec {

/// An edge label of the modified chain-edge labeling: the symbolic value
/// base - eps_mult * eps for an infinitesimal eps > 0. Comparison is exact:
/// (b, k) < (b', k') iff b < b', or b = b' and k > k'. No floating point.
struct ChainLabel {
    int base = 0;      // 0 or 1
    int eps_mult = 0;  // k >= 0; base 0 implies k = 0

    bool operator==(const ChainLabel& o) const {
        return base == o.base && eps_mult == o.eps_mult;
    }
    bool operator!=(const ChainLabel& o) const { return !(*this == o); }
    bool operator<(const ChainLabel& o) const {
        return base < o.base || (base == o.base && eps_mult > o.eps_mult);
    }
    bool operator<=(const ChainLabel& o) const { return !(o < *this); }

    std::string to_string() const;  // "0", "1", "1-e", "1-2e", ...
};

/// A maximal chain together with its edge labels, both read top-down
/// (from tau toward sigma). labels[i] belongs to the edge
/// chain.elems[i] -> chain.elems[i+1].
struct LabeledChain {
    MaximalChain chain;
    std::vector<ChainLabel> labels;
};

/// Witness for a non-trivial disconnected subinterval: pi straddles the
/// reduction of the tau-window spanning two adjacent occurrences of pi that
/// are offset by at least 3.
struct DisconnectionWitness {
    Permutation pi;
    Window window;  // window of tau

    bool operator==(const DisconnectionWitness& o) const {
        return pi == o.pi && window == o.window;
    }
};

/// sigma straddles tau: sigma is both a prefix and a suffix of tau and has no
/// other occurrence. False when sigma = tau.
bool straddles(const Permutation& sigma, const Permutation& tau);

/// Connected components of the open interval's Hasse graph, each a sorted
/// list of element indices. Empty when N < 2.
std::vector<std::vector<int>> open_components(const Interval& I);

/// Whether the open interval is disconnected. For N >= 3 this evaluates the
/// straddle characterization and cross-checks it against BFS on the open
/// Hasse graph (a mismatch throws). Rank-2 intervals are disconnected exactly
/// when they have two mid elements; N < 2 is connected.
bool is_disconnected(const Interval& I);

enum class SubintervalSearch {
    Full,       // scan every element of [sigma, tau]
    Optimized,  // scan only [x(tau), tau]; valid for sigma = 1, |x(tau)| != 2
    Auto,       // Optimized when valid, Full otherwise
};

/// Finds a non-trivial disconnected subinterval, if any: the first witness in
/// (rank, lexicographic, leftmost-pair) scan order. Full and Optimized agree
/// on existence whenever Optimized is valid.
std::optional<DisconnectionWitness> find_disconnected_subinterval(
    const Interval& I, SubintervalSearch mode = SubintervalSearch::Auto);

/// Early-exit scan equivalent to find_disconnected_subinterval(...).has_value()
/// that avoids materializing the interval; used by samplers. Returns false
/// when sigma is not contained in tau.
bool has_disconnected_subinterval(const Permutation& sigma, const Permutation& tau);

/// Two-pass chain-edge labels along C, top-down. Pass 1 labels an edge 0 when
/// it deletes the leftmost entry (monotone elements count as left deletions)
/// and 1 otherwise. Pass 2 walks down the chain and, at each triple
/// pi'' -> pi' -> pi with pi straddling pi'', replaces the lower label by the
/// upper label minus eps unless both labels are plain 0.
LabeledChain cl_labels(const Interval& I, const MaximalChain& C);

struct DualClCounterexample {
    Permutation alpha;
    Permutation beta;
    std::vector<Permutation> root;  // chain from tau down to beta
    int increasing_chain_count = 0;
    bool lex_least_violated = false;
};

struct DualClResult {
    bool ok = false;
    std::optional<DualClCounterexample> counterexample;
};

/// Verifies the dual CL property: in every top-rooted subinterval
/// [alpha, beta]_r (r a maximal chain from tau down to beta), exactly one
/// maximal chain has weakly increasing labels top-down and it strictly
/// lexicographically precedes all others. Throws CapExceededError when the
/// interval has more than max_chains maximal chains.
DualClResult verify_dual_cl(const Interval& I, std::int64_t max_chains = 500);

/// Shellable iff no non-trivial disconnected subinterval.
bool is_shellable(const Interval& I);

struct ShellingCheck {
    /// Facets ordered by lexicographic label sequence satisfy the shelling
    /// condition.
    bool cl_order_is_shelling = false;
    /// Set only when the CL order fails and the facet count is at most
    /// exhaustive_cap: whether any facet order is a shelling.
    std::optional<bool> some_order_shells;
};

/// Direct check of the shelling condition on the order complex: each new
/// facet must meet the union of its predecessors in a pure complex of
/// codimension 1.
ShellingCheck verify_shelling_order(const Interval& I, std::int64_t max_chains = 1'000'000,
                                    int exhaustive_cap = 8);

struct TwoPlusTwoResult {
    bool two_plus_two_free = false;
    /// Four element indices (a, b, c, d) with a < b and c < d forming an
    /// induced 2+2, when present.
    std::optional<std::array<int, 4>> witness;
};

TwoPlusTwoResult is_two_plus_two_free(const Interval& I);

}  // namespace consec
