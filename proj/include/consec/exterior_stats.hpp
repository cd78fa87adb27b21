#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "consec/permutation.hpp"
#include "consec/rational.hpp"

namespace consec {

/// Exact per-n statistics gathered in one exhaustive pass over S_n.
struct SnStats {
    int n = 0;
    /// exterior_counts[k-1] = #{tau : |x(tau)| = k}, k = 1..n-1.
    std::vector<std::int64_t> exterior_counts;
    /// bifix_event_counts[i-1] = #{tau : prefix(tau,i) = suffix(tau,i)},
    /// i = 1..n-1 (the event B_i, not the longest bifix).
    std::vector<std::int64_t> bifix_event_counts;
    /// #{tau : x(tau) <= i(tau)}; 0 for n = 2 by convention (the interior is
    /// undefined, so every tau of length 2 counts as having a carrier).
    std::int64_t no_carrier = 0;
};

/// One exhaustive sweep of S_n. shards = 0 picks a default; any shard count
/// gives the identical result.
SnStats exhaustive_stats(int n, int threads = 1, int shards = 0);

/// Counts of tau in S_n by a statistic, for n = n_min..n_max.
struct DistributionTable {
    std::string statistic_id;
    int n_min = 2;
    int n_max = 2;
    /// rows[n - n_min][k - 1] = count at statistic value k.
    std::vector<std::vector<std::int64_t>> rows;

    std::int64_t count(int n, int k) const {
        const auto& row = rows[static_cast<std::size_t>(n - n_min)];
        if (k < 1 || k > static_cast<int>(row.size())) return 0;
        return row[static_cast<std::size_t>(k - 1)];
    }
};

/// Exact distribution of |x(tau)| over S_n for n = 2..n_max by exhaustive
/// enumeration. Throws CapExceededError above max_exhaustive_n.
DistributionTable exterior_length_table(int n_max, int threads = 1, int max_exhaustive_n = 10);

/// #{tau in S_n : |x(tau)| = n-2}, exhaustively; equals 2n+2 for n >= 4.
std::int64_t count_exterior_n_minus_2(int n, int threads = 1);

/// #{tau in S_n : x(tau) <= i(tau)} for n = 2..n_max.
std::vector<std::int64_t> no_carrier_counts(int n_max, int threads = 1, int max_exhaustive_n = 10);

/// Exact P_n(prefix(tau,i) = suffix(tau,i)) as a rational; equals 1/i! for
/// i <= n/2.
Rational bifix_probability_exact(int n, int i, int threads = 1);
Rational bifix_probability_exact(const SnStats& stats, int i);

/// Evaluable upper bound for P_n(|x(tau)| >= m): the main summation
/// sum_{i=m}^{floor(n/2)} 1/i! plus the three explicit tail terms
/// (n - floor(sqrt n) - floor(n/2)) / floor(sqrt n)!,
/// (floor(sqrt n) - 2) / 2^(floor(sqrt n) - 1), and 2/n!.
double xgem_bound(int n, int m);

/// E_n(|x(tau)|) as an exact rational.
Rational expected_exterior_exact(int n, int threads = 1);
Rational expected_exterior_exact(const SnStats& stats);

/// counts(n, 1) is divisible by 4 (n >= 3).
bool non_overlapping_divisibility(int n, int threads = 1);

enum class SampleStat {
    ExteriorLengthMean,
    HasCarrier,
    MuZeroGivenSigma,        // conditional on sigma <= tau (rejection sampling)
    DisconnectedSubinterval,  // [sigma, tau] contains a non-trivial one
    ContainsSigma,
};

std::string to_string(SampleStat s);

struct SampleEstimate {
    int n = 0;
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    std::string statistic;
    double point_estimate = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo estimate over uniform random permutations of length n,
/// bit-reproducible for fixed (n, sample_size, seed): samples are split into
/// fixed-size blocks, block b drawn from the SplitMix64 stream derived from
/// (seed, b), and integer accumulators merge in block order.
SampleEstimate sample_statistic(int n, std::uint64_t sample_size, std::uint64_t seed,
                                SampleStat stat,
                                const std::optional<Permutation>& sigma = std::nullopt,
                                int threads = 1);

enum class CensusStat {
    ExteriorLength,
    HasCarrier,
    MuZero,                  // needs sigma; -1 for tau avoiding sigma
    DisconnectedSubinterval,  // needs sigma
    ContainsSigma,            // needs sigma
    Lattice,                  // needs sigma; is [sigma, tau] a lattice
};

std::string to_string(CensusStat s);

struct CensusResult {
    int n = 0;
    std::string statistic;
    /// values[r] = statistic of the permutation with lexicographic rank r;
    /// -1 marks not-applicable (tau avoiding sigma for conditional stats, or
    /// the statistic undefined at this length).
    std::vector<signed char> values;
    /// value -> count over applicable permutations.
    std::map<int, std::int64_t> aggregate;
};

CensusResult census(int n, CensusStat stat, const std::optional<Permutation>& sigma,
                    int threads = 1, int max_exhaustive_n = 10);

namespace detail {
/// tau with the initial and final occurrences of x(tau) removed
/// (tau_[k+1, n-k] for k = |x(tau)|), or nothing when |x(tau)| >= n/2.
/// Diagnostic helper; always contained in i(tau) when defined.
std::optional<Permutation> xbar(const Permutation& tau);
}  // namespace detail

}  // namespace consec
