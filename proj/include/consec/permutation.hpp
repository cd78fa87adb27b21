#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "consec/errors.hpp"

namespace consec {

/// A permutation of {1, ..., n} in one-line notation, stored in canonical
/// (reduced) form. Every constructor reduces its input, so two values compare
/// equal exactly when they are order-isomorphic words.
///
/// Capacity is fixed at 64 entries (enough for the n = 40 sampling
/// experiments); longer inputs raise CapacityError.
class Permutation {
public:
    static constexpr int kMaxLen = 64;

    Permutation() = default;

    /// Builds the canonical form of a word of distinct positive integers.
    static Permutation reduce(std::span<const int> word);
    static Permutation reduce(std::initializer_list<int> word);

    /// The increasing permutation 1 2 ... n.
    static Permutation identity(int n);

    int size() const { return size_; }

    /// Entry at 0-based position i, a value in 1..size().
    int entry(int i) const { return entries_[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return entry(i); }

    bool operator==(const Permutation& other) const {
        return size_ == other.size_ &&
               std::equal(entries_.begin(), entries_.begin() + size_, other.entries_.begin());
    }
    bool operator!=(const Permutation& other) const { return !(*this == other); }

    /// Orders by length first, then lexicographically. Used wherever a
    /// deterministic ordering of elements is required.
    bool operator<(const Permutation& other) const;

    std::size_t hash() const;

private:
    std::array<std::uint8_t, kMaxLen> entries_{};
    std::uint8_t size_ = 0;

    friend Permutation unchecked_from_ranks(const std::uint8_t* ranks, int n);
};

/// Builds a permutation from an already-reduced rank array without
/// validation. Internal fast path for window machinery.
Permutation unchecked_from_ranks(const std::uint8_t* ranks, int n);

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

/// A consecutive index range [lo, hi] of a host permutation, 1-based,
/// 1 <= lo <= hi <= n.
struct Window {
    int lo = 0;
    int hi = 0;
    int length() const { return hi - lo + 1; }
    bool operator==(const Window& o) const { return lo == o.lo && hi == o.hi; }
};

/// All occurrences of a pattern in a host, as windows in ascending order of
/// left endpoint. The list is exhaustive.
struct OccurrenceList {
    Permutation pattern;
    Permutation host;
    std::vector<Window> windows;

    bool empty() const { return windows.empty(); }
    std::size_t count() const { return windows.size(); }
};

// Containment and occurrences (consecutive patterns).

/// Reduction of the window [lo, hi] (1-based) of the host.
Permutation window_reduce(const Permutation& host, int lo, int hi);

/// Reductions of every length-k window of the host, indexed by 0-based start.
/// Uses an O(k)-per-slide comparison-vector update.
std::vector<Permutation> window_reductions(const Permutation& host, int k);

OccurrenceList occurrences(const Permutation& pattern, const Permutation& host);
bool contains(const Permutation& pattern, const Permutation& host);

// Prefixes, suffixes, bifixes, exterior, interior.

Permutation prefix(const Permutation& tau, int k);
Permutation suffix(const Permutation& tau, int k);

/// All proper bifix lengths: k in 1..n-1 with prefix(tau,k) = suffix(tau,k),
/// ascending.
std::vector<int> bifixes(const Permutation& tau);

/// True when prefix(tau, k) = suffix(tau, k); 1 <= k <= n required.
bool is_bifix(const Permutation& tau, int k);

/// The longest proper bifix. Defined for |tau| >= 2.
Permutation exterior(const Permutation& tau);
int exterior_length(const Permutation& tau);

/// Reduction of tau with the first and last entry removed. Needs |tau| >= 3.
Permutation interior(const Permutation& tau);

// Symmetries and sums.

bool is_monotone(const Permutation& tau);
Permutation reversal(const Permutation& tau);
Permutation complement(const Permutation& tau);
Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

/// |exterior(tau)| = 1. Defined for |tau| >= 2.
bool is_non_overlapping(const Permutation& tau);

/// Reduction after deleting the leftmost entry (|tau| >= 2).
Permutation drop_first(const Permutation& tau);
/// Reduction after deleting the rightmost entry (|tau| >= 2).
Permutation drop_last(const Permutation& tau);

// Text format. Comma-separated entries by default ("2,1,3,5,4,6"); the
// compact digit form ("213546") is accepted on input for n <= 9 and emitted
// only when requested.

Permutation parse_permutation(const std::string& text);
std::string to_string(const Permutation& p, bool compact = false);

namespace detail {
/// O(k^2) per-window reduction by comparison counting. Reference path for
/// window_reductions; the two must agree.
std::vector<Permutation> window_reductions_counting(const Permutation& host, int k);
}  // namespace detail

}  // namespace consec
