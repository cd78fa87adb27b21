#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "consec/permutation.hpp"
#include "consec/rational.hpp"

namespace consec {

/// The permutation of S_n with the given lexicographic rank (0-based),
/// decoded through the factorial number system.
inline Permutation permutation_at_rank(int n, std::int64_t rank) {
    std::array<std::uint8_t, Permutation::kMaxLen> out{};
    std::vector<std::uint8_t> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) pool.push_back(static_cast<std::uint8_t>(i));
    std::int64_t f = factorial(n);
    for (int i = 0; i < n; ++i) {
        f /= (n - i);
        const auto d = static_cast<std::size_t>(rank / f);
        rank %= f;
        out[static_cast<std::size_t>(i)] = pool[d];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return unchecked_from_ranks(out.data(), n);
}

/// Applies f to every permutation of S_n with lexicographic rank in
/// [rank_lo, rank_hi), in lexicographic order. f receives a value array and
/// the length; entries are 1..n.
template <typename F>
void for_each_permutation(int n, std::int64_t rank_lo, std::int64_t rank_hi, F&& f) {
    if (rank_lo >= rank_hi) return;
    Permutation start = permutation_at_rank(n, rank_lo);
    std::array<std::uint8_t, Permutation::kMaxLen> vals{};
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(start[i]);
    for (std::int64_t r = rank_lo; r < rank_hi; ++r) {
        f(vals.data(), n);
        std::next_permutation(vals.begin(), vals.begin() + n);
    }
}

template <typename F>
void for_each_permutation(int n, F&& f) {
    for_each_permutation(n, 0, factorial(n), std::forward<F>(f));
}

/// Folds an accumulator over S_n, sharded into contiguous lexicographic
/// blocks. Each shard folds independently (Acc must be default-constructible
/// and support merge via the supplied callable); shards merge in index order,
/// so the result is identical for every shard and thread count.
///
/// fold(acc, vals, n) consumes one permutation; merge(lhs, rhs) folds shard
/// results left to right.
template <typename Acc, typename Fold, typename Merge>
Acc sharded_fold(int n, int shard_count, int threads, Fold fold, Merge merge) {
    const std::int64_t total = factorial(n);
    if (shard_count < 1) shard_count = 1;
    if (threads < 1) threads = 1;
    std::vector<Acc> results(static_cast<std::size_t>(shard_count));

    auto run_shard = [&](int s) {
        const std::int64_t lo = total * s / shard_count;
        const std::int64_t hi = total * (s + 1) / shard_count;
        Acc acc{};
        for_each_permutation(n, lo, hi,
                             [&](const std::uint8_t* vals, int len) { fold(acc, vals, len); });
        results[static_cast<std::size_t>(s)] = std::move(acc);
    };

    if (threads == 1 || shard_count == 1) {
        for (int s = 0; s < shard_count; ++s) run_shard(s);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min(threads, shard_count);
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const int s = next.fetch_add(1);
                    if (s >= shard_count) return;
                    run_shard(s);
                }
            });
        for (auto& th : pool) th.join();
    }

    Acc out = std::move(results[0]);
    for (int s = 1; s < shard_count; ++s) merge(out, results[static_cast<std::size_t>(s)]);
    return out;
}

}  // namespace consec
