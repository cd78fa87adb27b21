#include "consec/exterior_stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "consec/enumerate.hpp"
#include "consec/errors.hpp"
#include "consec/mobius.hpp"
#include "consec/rank_analysis.hpp"
#include "consec/rng.hpp"
#include "consec/topology.hpp"

namespace consec {

namespace {

int default_shards(int n, int threads) {
    if (n <= 7 || threads <= 1) return std::max(1, threads);
    return std::min<std::int64_t>(64, factorial(n) / 10000 + 1);
}

/// All bifix events of tau in one pass: bit i-1 set when
/// prefix(tau, i) = suffix(tau, i).
std::uint64_t bifix_event_bits(const std::uint8_t* vals, int n) {
    std::uint64_t bits = 0;
    for (int k = 1; k < n; ++k) {
        const int off = n - k;
        bool ok = true;
        for (int j = 1; j < k && ok; ++j)
            for (int i = 0; i < j; ++i)
                if ((vals[i] < vals[j]) != (vals[off + i] < vals[off + j])) {
                    ok = false;
                    break;
                }
        if (ok) bits |= 1ull << (k - 1);
    }
    return bits;
}

/// Whether the length-k prefix pattern occurs at some start position in
/// [2, n-k] (1-based), i.e. whether x(tau) is contained in i(tau).
bool prefix_occurs_strictly_inside(const std::uint8_t* vals, int n, int k) {
    for (int s = 1; s + k - 1 <= n - 2; ++s) {  // 0-based starts 1..n-k-1
        bool match = true;
        for (int j = 1; j < k && match; ++j)
            for (int i = 0; i < j; ++i)
                if ((vals[s + i] < vals[s + j]) != (vals[i] < vals[j])) {
                    match = false;
                    break;
                }
        if (match) return true;
    }
    return false;
}

}  // namespace

SnStats exhaustive_stats(int n, int threads, int shards) {
    if (n < 2) throw InvalidInputError("exhaustive stats need n >= 2");
    if (n > Permutation::kMaxLen) throw CapacityError("n exceeds permutation capacity");
    if (shards <= 0) shards = default_shards(n, threads);

    struct Acc {
        std::vector<std::int64_t> exterior;
        std::vector<std::int64_t> bifix;
        std::int64_t no_carrier = 0;
    };
    const int nn = n;
    Acc merged = sharded_fold<Acc>(
        n, shards, threads,
        [nn](Acc& acc, const std::uint8_t* vals, int len) {
            if (acc.exterior.empty()) {
                acc.exterior.assign(static_cast<std::size_t>(nn) - 1, 0);
                acc.bifix.assign(static_cast<std::size_t>(nn) - 1, 0);
            }
            const std::uint64_t bits = bifix_event_bits(vals, len);
            for (int i = 1; i < len; ++i)
                if (bits & (1ull << (i - 1))) ++acc.bifix[static_cast<std::size_t>(i - 1)];
            const int x_len = bits == 0 ? 1 : 64 - __builtin_clzll(bits);
            ++acc.exterior[static_cast<std::size_t>(x_len - 1)];
            if (len >= 3 && prefix_occurs_strictly_inside(vals, len, x_len)) ++acc.no_carrier;
        },
        [](Acc& lhs, const Acc& rhs) {
            if (rhs.exterior.empty()) return;
            if (lhs.exterior.empty()) {
                lhs = rhs;
                return;
            }
            for (std::size_t i = 0; i < lhs.exterior.size(); ++i) lhs.exterior[i] += rhs.exterior[i];
            for (std::size_t i = 0; i < lhs.bifix.size(); ++i) lhs.bifix[i] += rhs.bifix[i];
            lhs.no_carrier += rhs.no_carrier;
        });

    SnStats out;
    out.n = n;
    out.exterior_counts = std::move(merged.exterior);
    out.bifix_event_counts = std::move(merged.bifix);
    out.no_carrier = merged.no_carrier;
    if (out.exterior_counts.empty()) {
        out.exterior_counts.assign(static_cast<std::size_t>(n) - 1, 0);
        out.bifix_event_counts.assign(static_cast<std::size_t>(n) - 1, 0);
    }
    return out;
}

DistributionTable exterior_length_table(int n_max, int threads, int max_exhaustive_n) {
    if (n_max < 2) throw InvalidInputError("table needs n_max >= 2");
    if (n_max > max_exhaustive_n)
        throw CapExceededError("exhaustive table capped at n = " +
                               std::to_string(max_exhaustive_n));
    DistributionTable t;
    t.statistic_id = "exterior-length";
    t.n_min = 2;
    t.n_max = n_max;
    for (int n = 2; n <= n_max; ++n)
        t.rows.push_back(exhaustive_stats(n, threads).exterior_counts);
    return t;
}

std::int64_t count_exterior_n_minus_2(int n, int threads) {
    if (n < 4) throw InvalidInputError("|x(tau)| = n-2 needs n >= 4");
    return exhaustive_stats(n, threads).exterior_counts[static_cast<std::size_t>(n - 2 - 1)];
}

std::vector<std::int64_t> no_carrier_counts(int n_max, int threads, int max_exhaustive_n) {
    if (n_max < 2) throw InvalidInputError("no-carrier counts need n_max >= 2");
    if (n_max > max_exhaustive_n)
        throw CapExceededError("exhaustive counts capped at n = " +
                               std::to_string(max_exhaustive_n));
    std::vector<std::int64_t> out;
    for (int n = 2; n <= n_max; ++n) out.push_back(exhaustive_stats(n, threads).no_carrier);
    return out;
}

Rational bifix_probability_exact(const SnStats& stats, int i) {
    if (i < 1 || i >= stats.n) throw InvalidInputError("bifix index out of range");
    return Rational(stats.bifix_event_counts[static_cast<std::size_t>(i - 1)],
                    factorial(stats.n));
}

Rational bifix_probability_exact(int n, int i, int threads) {
    return bifix_probability_exact(exhaustive_stats(n, threads), i);
}

double xgem_bound(int n, int m) {
    if (m < 1 || m > n - 1) throw InvalidInputError("xgem bound needs 1 <= m <= n-1");
    const int half = n / 2;
    const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    double bound = 0.0;
    for (int i = m; i <= half; ++i) bound += 1.0 / static_cast<double>(factorial(i));
    // Tail terms: floor(n/2) < i <= n - floor(sqrt n) contributes
    // 1/floor(sqrt n)! each, n - floor(sqrt n) < i <= n-2 contributes
    // 1/2^(floor(sqrt n)-1) each, and i = n-1 exactly 2/n!.
    const double mid_terms = std::max(0, n - root - half);
    bound += mid_terms / static_cast<double>(factorial(root));
    const double late_terms = std::max(0, root - 2);
    bound += late_terms / std::pow(2.0, root - 1);
    bound += 2.0 / static_cast<double>(factorial(n));
    return bound;
}

Rational expected_exterior_exact(const SnStats& stats) {
    Rational sum(0);
    for (int k = 1; k < stats.n; ++k)
        sum = sum + Rational(static_cast<std::int64_t>(k) *
                             stats.exterior_counts[static_cast<std::size_t>(k - 1)]);
    return sum * Rational(1, factorial(stats.n));
}

Rational expected_exterior_exact(int n, int threads) {
    return expected_exterior_exact(exhaustive_stats(n, threads));
}

bool non_overlapping_divisibility(int n, int threads) {
    if (n < 3) throw InvalidInputError("divisibility check needs n >= 3");
    return exhaustive_stats(n, threads).exterior_counts[0] % 4 == 0;
}

std::string to_string(SampleStat s) {
    switch (s) {
        case SampleStat::ExteriorLengthMean: return "exterior-length-mean";
        case SampleStat::HasCarrier: return "has-carrier";
        case SampleStat::MuZeroGivenSigma: return "mu-zero-given-sigma";
        case SampleStat::DisconnectedSubinterval: return "disconnected-subinterval";
        case SampleStat::ContainsSigma: return "contains-sigma";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kSampleBlock = 4096;

struct SampleAcc {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
};

}  // namespace

SampleEstimate sample_statistic(int n, std::uint64_t sample_size, std::uint64_t seed,
                                SampleStat stat, const std::optional<Permutation>& sigma,
                                int threads) {
    if (n < 2) throw InvalidInputError("sampling needs n >= 2");
    if (sample_size == 0) throw InvalidInputError("sample size must be positive");
    const bool needs_sigma = stat == SampleStat::MuZeroGivenSigma ||
                             stat == SampleStat::DisconnectedSubinterval ||
                             stat == SampleStat::ContainsSigma;
    if (needs_sigma && !sigma) throw InvalidInputError("statistic requires sigma");

    const std::uint64_t blocks = (sample_size + kSampleBlock - 1) / kSampleBlock;
    std::vector<SampleAcc> per_block(static_cast<std::size_t>(blocks));

    auto run_block = [&](std::uint64_t b) {
        SplitMix64 rng(SplitMix64::stream_seed(seed, b));
        MobiusMemo memo;
        const std::uint64_t lo = b * kSampleBlock;
        const std::uint64_t hi = std::min(sample_size, lo + kSampleBlock);
        SampleAcc acc;
        for (std::uint64_t s = lo; s < hi; ++s) {
            Permutation tau = random_permutation(n, rng);
            std::int64_t v = 0;
            switch (stat) {
                case SampleStat::ExteriorLengthMean:
                    v = exterior_length(tau);
                    break;
                case SampleStat::HasCarrier:
                    v = n < 3 ? 1 : (has_carrier_element(tau) ? 1 : 0);
                    break;
                case SampleStat::MuZeroGivenSigma:
                    while (!contains(*sigma, tau)) tau = random_permutation(n, rng);
                    v = mobius_recursive(*sigma, tau, false, &memo).value == 0 ? 1 : 0;
                    break;
                case SampleStat::DisconnectedSubinterval:
                    v = has_disconnected_subinterval(*sigma, tau) ? 1 : 0;
                    break;
                case SampleStat::ContainsSigma:
                    v = contains(*sigma, tau) ? 1 : 0;
                    break;
            }
            acc.sum += v;
            acc.sum_sq += v * v;
        }
        per_block[static_cast<std::size_t>(b)] = acc;
    };

    if (threads <= 1 || blocks == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const auto workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), blocks);
        for (std::uint64_t t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t b = next.fetch_add(1);
                    if (b >= blocks) return;
                    run_block(b);
                }
            });
        for (auto& th : pool) th.join();
    }

    SampleAcc total;
    for (const auto& acc : per_block) {
        total.sum += acc.sum;
        total.sum_sq += acc.sum_sq;
    }

    SampleEstimate est;
    est.n = n;
    est.sample_size = sample_size;
    est.seed = seed;
    est.statistic = to_string(stat);
    const double size = static_cast<double>(sample_size);
    est.point_estimate = static_cast<double>(total.sum) / size;
    if (sample_size > 1) {
        const double var = (static_cast<double>(total.sum_sq) -
                            size * est.point_estimate * est.point_estimate) /
                           (size - 1.0);
        est.standard_error = std::sqrt(std::max(0.0, var) / size);
    }
    return est;
}

std::string to_string(CensusStat s) {
    switch (s) {
        case CensusStat::ExteriorLength: return "exterior-length";
        case CensusStat::HasCarrier: return "has-carrier";
        case CensusStat::MuZero: return "mu-zero";
        case CensusStat::DisconnectedSubinterval: return "disconnected-subinterval";
        case CensusStat::ContainsSigma: return "contains-sigma";
        case CensusStat::Lattice: return "lattice";
    }
    return "?";
}

CensusResult census(int n, CensusStat stat, const std::optional<Permutation>& sigma, int threads,
                    int max_exhaustive_n) {
    if (n < 1) throw InvalidInputError("census needs n >= 1");
    if (n > max_exhaustive_n)
        throw CapExceededError("exhaustive census capped at n = " +
                               std::to_string(max_exhaustive_n));
    const bool needs_sigma = stat == CensusStat::MuZero ||
                             stat == CensusStat::DisconnectedSubinterval ||
                             stat == CensusStat::ContainsSigma || stat == CensusStat::Lattice;
    if (needs_sigma && !sigma) throw InvalidInputError("census statistic requires sigma");

    const std::int64_t total = factorial(n);
    CensusResult out;
    out.n = n;
    out.statistic = to_string(stat);
    out.values.assign(static_cast<std::size_t>(total), 0);

    const int shards = default_shards(n, threads);
    std::vector<std::map<int, std::int64_t>> aggregates(static_cast<std::size_t>(shards));

    auto run_shard = [&](int sh) {
        const std::int64_t lo = total * sh / shards;
        const std::int64_t hi = total * (sh + 1) / shards;
        MobiusMemo memo;
        auto& agg = aggregates[static_cast<std::size_t>(sh)];
        std::int64_t rank = lo;
        for_each_permutation(n, lo, hi, [&](const std::uint8_t* vals, int len) {
            const Permutation tau = unchecked_from_ranks(vals, len);
            int v = 0;
            switch (stat) {
                case CensusStat::ExteriorLength:
                    v = len < 2 ? -1 : exterior_length(tau);
                    break;
                case CensusStat::HasCarrier:
                    // length 2 counts as having a carrier; length 1 is n/a
                    v = len < 2 ? -1 : (len < 3 ? 1 : (has_carrier_element(tau) ? 1 : 0));
                    break;
                case CensusStat::MuZero:
                    v = contains(*sigma, tau)
                            ? (mobius_recursive(*sigma, tau, false, &memo).value == 0 ? 1 : 0)
                            : -1;
                    break;
                case CensusStat::DisconnectedSubinterval:
                    v = contains(*sigma, tau) ? (has_disconnected_subinterval(*sigma, tau) ? 1 : 0)
                                              : -1;
                    break;
                case CensusStat::ContainsSigma:
                    v = contains(*sigma, tau) ? 1 : 0;
                    break;
                case CensusStat::Lattice:
                    v = contains(*sigma, tau)
                            ? (is_lattice(build_interval(*sigma, tau)) ? 1 : 0)
                            : -1;
                    break;
            }
            out.values[static_cast<std::size_t>(rank)] = static_cast<signed char>(v);
            if (v >= 0) ++agg[v];
            ++rank;
        });
    };

    if (threads <= 1 || shards == 1) {
        for (int sh = 0; sh < shards; ++sh) run_shard(sh);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min(threads, shards);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const int sh = next.fetch_add(1);
                    if (sh >= shards) return;
                    run_shard(sh);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& agg : aggregates)
        for (const auto& [value, cnt] : agg) out.aggregate[value] += cnt;
    return out;
}

namespace detail {

std::optional<Permutation> xbar(const Permutation& tau) {
    const int n = tau.size();
    if (n < 2) throw UndefinedError("xbar undefined for a single entry");
    const int k = exterior_length(tau);
    if (2 * k >= n) return std::nullopt;
    return window_reduce(tau, k + 1, n - k);
}

}  // namespace detail

}  // namespace consec
