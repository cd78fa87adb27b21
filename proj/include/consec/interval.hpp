#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "consec/permutation.hpp"

namespace consec {

/// Small dynamic bitset used for comparability masks over interval elements.
struct Bitset {
    std::vector<std::uint64_t> words;

    explicit Bitset(int bits = 0) : words(static_cast<std::size_t>((bits + 63) / 64), 0) {}
    void set(int i) { words[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63); }
    bool test(int i) const { return (words[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }
    void or_with(const Bitset& o) {
        for (std::size_t w = 0; w < words.size(); ++w) words[w] |= o.words[w];
    }
    int count() const {
        int c = 0;
        for (auto w : words) c += __builtin_popcountll(w);
        return c;
    }
};

/// The interval [sigma, tau] materialized as a ranked DAG. Elements are the
/// distinct window reductions of tau that contain sigma, graded by
/// rank = |element| - |sigma|; each element keeps the set of tau-windows in
/// its equivalence class (ascending left endpoint, so the first window is the
/// class representative).
///
/// Elements are indexed 0..size()-1 in (rank, lexicographic) order, so
/// index 0 is sigma and index size()-1 is tau.
class Interval {
public:
    const Permutation& sigma() const { return values_.front(); }
    const Permutation& tau() const { return values_.back(); }

    int size() const { return static_cast<int>(values_.size()); }
    /// N = |tau| - |sigma|; ranks run 0..N.
    int rank_count() const { return static_cast<int>(rank_offsets_.size()) - 2; }

    const Permutation& value(int idx) const { return values_[static_cast<std::size_t>(idx)]; }
    int rank_of(int idx) const { return value(idx).size() - sigma().size(); }

    /// Elements this element covers (one rank down).
    std::span<const int> covers(int idx) const {
        return {covers_flat_.data() + covers_off_[static_cast<std::size_t>(idx)],
                covers_flat_.data() + covers_off_[static_cast<std::size_t>(idx) + 1]};
    }
    /// Elements covering this element (one rank up).
    std::span<const int> covered_by(int idx) const {
        return {parents_flat_.data() + parents_off_[static_cast<std::size_t>(idx)],
                parents_flat_.data() + parents_off_[static_cast<std::size_t>(idx) + 1]};
    }
    /// Windows of tau reducing to this element, ascending by left endpoint.
    std::span<const Window> windows(int idx) const {
        return {windows_flat_.data() + windows_off_[static_cast<std::size_t>(idx)],
                windows_flat_.data() + windows_off_[static_cast<std::size_t>(idx) + 1]};
    }

    int bottom() const { return 0; }
    int top() const { return size() - 1; }

    std::span<const int> elements_of_rank(int r) const {
        return {rank_members_.data() + rank_offsets_[static_cast<std::size_t>(r)],
                rank_members_.data() + rank_offsets_[static_cast<std::size_t>(r) + 1]};
    }

    std::optional<int> index_of(const Permutation& p) const;

    std::vector<int> rank_sizes() const;

    /// descendants()[e] has bit d set iff element d <= element e (including e).
    std::vector<Bitset> descendants() const;
    /// ancestors()[e] has bit a set iff element e <= element a (including e).
    std::vector<Bitset> ancestors() const;

    /// Number of maximal chains (paths from tau down to sigma).
    std::int64_t count_maximal_chains() const;

private:
    std::vector<Permutation> values_;
    std::vector<int> rank_members_;   // element indices grouped by rank
    std::vector<int> rank_offsets_;   // rank r occupies [rank_offsets_[r], rank_offsets_[r+1])
    std::vector<int> covers_flat_;
    std::vector<std::size_t> covers_off_;
    std::vector<int> parents_flat_;
    std::vector<std::size_t> parents_off_;
    std::vector<Window> windows_flat_;
    std::vector<std::size_t> windows_off_;

    friend class WindowClassDag;
};

/// Per-tau precomputation: the poset of all window classes of tau (the P3
/// quotient over sigma = 1), from which [sigma, tau] is extracted for any
/// sigma by marking the classes that contain it. Build once per tau when
/// sweeping many sigmas.
class WindowClassDag {
public:
    explicit WindowClassDag(const Permutation& tau);

    const Permutation& tau() const { return tau_; }
    int class_count() const { return static_cast<int>(values_.size()); }
    const Permutation& value(int c) const { return values_[static_cast<std::size_t>(c)]; }

    /// Class ids of a given window length, sorted lexicographically by value.
    std::span<const int> classes_of_length(int k) const {
        return {len_members_.data() + len_offsets_[static_cast<std::size_t>(k)],
                len_members_.data() + len_offsets_[static_cast<std::size_t>(k) + 1]};
    }

    /// Extracts the interval [sigma, tau]. Throws NotComparableError when
    /// sigma is not contained in tau.
    Interval interval(const Permutation& sigma) const;

private:
    Permutation tau_;
    std::vector<Permutation> values_;
    std::vector<int> len_members_;
    std::vector<int> len_offsets_;            // classes of length k at [off[k], off[k+1])
    std::vector<int> child_first_;            // class of drop_first, -1 for length 1
    std::vector<int> child_last_;             // class of drop_last, -1 for length 1
    std::vector<std::vector<Window>> windows_;
};

/// Builds [sigma, tau]; one-shot convenience over WindowClassDag.
Interval build_interval(const Permutation& sigma, const Permutation& tau);

std::vector<int> rank_sizes(const Interval& I);

/// Chain classification with its witness: an interval is a chain iff tau is
/// monotone or sigma occurs exactly once, as a prefix or a suffix.
struct ChainCheck {
    bool chain = false;
    bool tau_monotone = false;
    std::optional<Window> unique_occurrence;  // set when chain via uniqueness
};
ChainCheck is_chain(const Interval& I);

/// When sigma occurs exactly once in tau at window [i, j], the interval is a
/// product of two chains with i and |tau|-j+1 elements; returns those sizes
/// (and checks the grid isomorphism). Returns nullopt otherwise.
std::optional<std::pair<int, int>> is_product_of_two_chains(const Interval& I);

/// A maximal chain as element indices from tau down to sigma (length N+1).
struct MaximalChain {
    std::vector<int> elems;
};

/// All maximal chains, deduplicated structurally (they are element
/// sequences). Throws CapExceededError when the count exceeds the cap.
std::vector<MaximalChain> maximal_chains(const Interval& I,
                                         std::int64_t max_chains = 1'000'000);

/// Facets of the order complex: maximal chains with sigma and tau removed,
/// as element-index sets (each of size N-1). Empty when N < 2.
std::vector<std::vector<int>> order_complex_facets(const Interval& I,
                                                   std::int64_t max_chains = 1'000'000);

}  // namespace consec
