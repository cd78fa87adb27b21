#include "consec/rank_analysis.hpp"

#include <algorithm>
#include <numeric>

#include "consec/errors.hpp"

namespace consec {

RankProfile rank_profile(const Interval& I) {
    RankProfile out;
    out.sizes = I.rank_sizes();
    const int N = I.rank_count();
    out.breaking_rank = -1;
    for (int r = N; r >= 0; --r)
        if (out.sizes[static_cast<std::size_t>(r)] < N + 1 - r) {
            out.breaking_rank = r;
            break;
        }
    const int peak = *std::max_element(out.sizes.begin(), out.sizes.end());
    for (int r = N; r >= 0; --r)
        if (out.sizes[static_cast<std::size_t>(r)] == peak) {
            out.peak_rank = r;
            break;
        }
    return out;
}

bool is_rank_unimodal(const Interval& I) {
    const auto sizes = I.rank_sizes();
    std::size_t i = 0;
    while (i + 1 < sizes.size() && sizes[i] <= sizes[i + 1]) ++i;
    while (i + 1 < sizes.size() && sizes[i] >= sizes[i + 1]) ++i;
    return i + 1 == sizes.size();
}

RankInjection rank_injection(const Interval& I, int r, std::span<const int> selection) {
    const int N = I.rank_count();
    if (r < 0 || r >= N) throw InvalidInputError("rank out of range for injection");
    const auto level = I.elements_of_rank(r);
    if (static_cast<int>(selection.size()) >
        std::min(static_cast<int>(level.size()), N - r))
        throw InvalidInputError("injection selection larger than min(a_r, N - r)");

    const int n = I.tau().size();
    const int len = I.sigma().size() + r;  // window length at rank r
    const int max_start = n - len + 1;

    std::vector<int> starts;
    starts.reserve(selection.size());
    std::vector<char> used(static_cast<std::size_t>(max_start) + 1, 0);
    for (int e : selection) {
        if (I.rank_of(e) != r) throw InvalidInputError("selection element not at rank r");
        const int lo = I.windows(e).front().lo;  // class representative
        starts.push_back(lo);
        used[static_cast<std::size_t>(lo)] = 1;
    }
    int k = 0;
    for (int cand = 1; cand <= max_start; ++cand)
        if (!used[static_cast<std::size_t>(cand)]) {
            k = cand;
            break;
        }
    if (k == 0) throw Error("no free left endpoint for rank injection");

    RankInjection out;
    out.chosen_k = k;
    std::vector<char> hit(static_cast<std::size_t>(I.size()), 0);
    for (std::size_t t = 0; t < selection.size(); ++t) {
        const int i = starts[t];
        const int f = i < k ? i : i - 1;
        const Permutation image = window_reduce(I.tau(), f, f + len);
        const auto idx = I.index_of(image);
        if (!idx || hit[static_cast<std::size_t>(*idx)])
            throw Error("rank injection failed to be injective into the interval");
        hit[static_cast<std::size_t>(*idx)] = 1;
        out.mapping.emplace_back(selection[t], *idx);
    }
    return out;
}

ChainFamily rank_intersecting_chains(const Interval& I, int i) {
    const int N = I.rank_count();
    if (i < 1 || i > N + 1) throw InvalidInputError("rank-intersecting index out of range");
    const auto sizes = I.rank_sizes();

    // The i largest rank levels, under a tie-break that makes them a
    // consecutive window; unimodality puts the smallest at an extreme.
    int r1 = -1;
    for (int lo = 0; lo + i - 1 <= N; ++lo) {
        const int hi = lo + i - 1;
        int inside_min = sizes[static_cast<std::size_t>(lo)];
        for (int r = lo; r <= hi; ++r)
            inside_min = std::min(inside_min, sizes[static_cast<std::size_t>(r)]);
        int outside_max = 0;
        for (int r = 0; r <= N; ++r)
            if (r < lo || r > hi) outside_max = std::max(outside_max, sizes[static_cast<std::size_t>(r)]);
        if (inside_min >= outside_max) {
            r1 = lo;
            break;
        }
    }
    if (r1 < 0) throw Error("no consecutive window of i largest rank levels");
    const int r2 = r1 + i - 1;
    const int l_i = std::min(sizes[static_cast<std::size_t>(r1)], sizes[static_cast<std::size_t>(r2)]);

    // Start with the l_i rank-r1 elements of smallest representative left
    // endpoint, then thread the injections upward.
    std::vector<int> current(I.elements_of_rank(r1).begin(), I.elements_of_rank(r1).end());
    std::sort(current.begin(), current.end(), [&](int a, int b) {
        return I.windows(a).front().lo < I.windows(b).front().lo;
    });
    current.resize(static_cast<std::size_t>(l_i));

    ChainFamily out;
    out.rank_lo = r1;
    out.rank_hi = r2;
    out.chains.resize(static_cast<std::size_t>(l_i));
    for (std::size_t c = 0; c < current.size(); ++c) out.chains[c].push_back(current[c]);

    for (int r = r1; r < r2; ++r) {
        const auto inj = rank_injection(I, r, current);
        for (std::size_t c = 0; c < current.size(); ++c) {
            current[c] = inj.mapping[c].second;
            out.chains[c].push_back(current[c]);
        }
    }
    return out;
}

int max_k_family_oracle(const Interval& I, int k, int max_elements) {
    const int n = I.size();
    if (n > max_elements)
        throw CapExceededError("k-family oracle cap: " + std::to_string(n) + " elements exceed " +
                               std::to_string(max_elements));
    if (k < 1) throw InvalidInputError("k must be positive");
    const int N = I.rank_count();
    if (k >= N + 1) return n;  // no chain has k+1 elements

    // Seed with the union of the k largest rank levels, a realized k-family.
    auto sizes = I.rank_sizes();
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    int best = 0;
    for (int j = 0; j < k; ++j) best += sizes[static_cast<std::size_t>(j)];

    const auto desc = I.descendants();
    std::vector<int> chain_len(static_cast<std::size_t>(n), 0);  // 0 = not chosen

    // Elements are in rank order, so all comparabilities point backwards.
    auto dfs = [&](auto&& self, int idx, int count) -> void {
        if (idx == n) {
            best = std::max(best, count);
            return;
        }
        if (count + (n - idx) <= best) return;
        // include idx if it does not complete a (k+1)-chain
        int longest = 0;
        const auto& below = desc[static_cast<std::size_t>(idx)];
        for (int d = 0; d < idx; ++d)
            if (chain_len[static_cast<std::size_t>(d)] > longest && below.test(d))
                longest = chain_len[static_cast<std::size_t>(d)];
        if (longest + 1 <= k) {
            chain_len[static_cast<std::size_t>(idx)] = longest + 1;
            self(self, idx + 1, count + 1);
            chain_len[static_cast<std::size_t>(idx)] = 0;
        }
        self(self, idx + 1, count);
    };
    dfs(dfs, 0, 0);
    return best;
}

SpernerResult is_strongly_sperner(const Interval& I, int max_oracle_elements) {
    const int N = I.rank_count();
    SpernerResult out;

    // Constructive route: the chain families must exist and be valid for
    // every i (Griggs: unimodal + strongly rank intersecting).
    const auto desc = I.descendants();
    for (int i = 1; i <= N + 1; ++i) {
        const auto fam = rank_intersecting_chains(I, i);
        std::vector<char> used(static_cast<std::size_t>(I.size()), 0);
        for (const auto& chain : fam.chains) {
            if (static_cast<int>(chain.size()) != fam.rank_hi - fam.rank_lo + 1) return out;
            for (std::size_t t = 0; t < chain.size(); ++t) {
                const int e = chain[t];
                if (used[static_cast<std::size_t>(e)]) return out;
                used[static_cast<std::size_t>(e)] = 1;
                if (I.rank_of(e) != fam.rank_lo + static_cast<int>(t)) return out;
                if (t > 0 && !desc[static_cast<std::size_t>(e)].test(chain[t - 1])) return out;
            }
        }
    }

    if (I.size() > max_oracle_elements) {
        out.strongly_sperner = true;
        out.method = SpernerResult::Method::Constructive;
        return out;
    }

    auto sizes = I.rank_sizes();
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    for (int k = 1; k <= N + 1; ++k) {
        int rank_sum = 0;
        for (int j = 0; j < k; ++j) rank_sum += sizes[static_cast<std::size_t>(j)];
        if (max_k_family_oracle(I, k, max_oracle_elements) != rank_sum) return out;
    }
    out.strongly_sperner = true;
    out.method = SpernerResult::Method::Oracle;
    return out;
}

bool is_lattice(const Interval& I) {
    const int n = I.size();
    const auto desc = I.descendants();
    const auto asc = I.ancestors();
    const std::size_t words = desc.front().words.size();

    auto unique_extreme = [&](const std::vector<Bitset>& rel, int x, int y) {
        // common bounds of x and y in direction rel; unique maximal element
        // under rel-inclusion means a unique meet/join.
        std::vector<std::uint64_t> common(words);
        for (std::size_t w = 0; w < words; ++w)
            common[w] = rel[static_cast<std::size_t>(x)].words[w] &
                        rel[static_cast<std::size_t>(y)].words[w];
        int extreme_count = 0;
        for (int z = 0; z < n; ++z) {
            if (!((common[static_cast<std::size_t>(z >> 6)] >> (z & 63)) & 1)) continue;
            bool dominated = false;
            for (int w2 = 0; w2 < n && !dominated; ++w2) {
                if (w2 == z) continue;
                if (((common[static_cast<std::size_t>(w2 >> 6)] >> (w2 & 63)) & 1) &&
                    rel[static_cast<std::size_t>(w2)].test(z))
                    dominated = true;
            }
            if (!dominated) ++extreme_count;
        }
        return extreme_count == 1;
    };

    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (desc[static_cast<std::size_t>(y)].test(x) ||
                desc[static_cast<std::size_t>(x)].test(y))
                continue;  // comparable pairs have trivial meet and join
            if (!unique_extreme(desc, x, y)) return false;  // meets
            if (!unique_extreme(asc, x, y)) return false;   // joins
        }
    return true;
}

}  // namespace consec
