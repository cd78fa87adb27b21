#include "consec/topology.hpp"

#include <algorithm>
#include <unordered_map>

#include "consec/errors.hpp"

namespace consec {

std::string ChainLabel::to_string() const {
    if (eps_mult == 0) return std::to_string(base);
    if (eps_mult == 1) return std::to_string(base) + "-e";
    return std::to_string(base) + "-" + std::to_string(eps_mult) + "e";
}

bool straddles(const Permutation& sigma, const Permutation& tau) {
    const int k = sigma.size();
    const int n = tau.size();
    if (k >= n) return false;
    const auto occ = occurrences(sigma, tau);
    return occ.windows.size() == 2 && occ.windows[0] == Window{1, k} &&
           occ.windows[1] == Window{n - k + 1, n};
}

std::vector<std::vector<int>> open_components(const Interval& I) {
    std::vector<std::vector<int>> comps;
    const int n = I.size();
    if (I.rank_count() < 2) return comps;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(I.bottom())] = 1;
    seen[static_cast<std::size_t>(I.top())] = 1;
    for (int start = 1; start < n - 1; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        std::vector<int> queue{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!queue.empty()) {
            const int e = queue.back();
            queue.pop_back();
            comp.push_back(e);
            auto visit = [&](int other) {
                if (other != I.bottom() && other != I.top() &&
                    !seen[static_cast<std::size_t>(other)]) {
                    seen[static_cast<std::size_t>(other)] = 1;
                    queue.push_back(other);
                }
            };
            for (int c : I.covers(e)) visit(c);
            for (int p : I.covered_by(e)) visit(p);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_disconnected(const Interval& I) {
    const int N = I.rank_count();
    if (N < 2) return false;
    if (N == 2) return I.elements_of_rank(1).size() == 2;

    // Straddle characterization: sigma occurs exactly as prefix and suffix.
    const auto w = I.windows(I.bottom());
    const int n = I.tau().size();
    const int k = I.sigma().size();
    const bool straddle =
        w.size() == 2 && w[0] == Window{1, k} && w[1] == Window{n - k + 1, n};

    const bool bfs = open_components(I).size() >= 2;
    if (straddle != bfs)
        throw Error("disconnectivity characterization disagrees with BFS");
    return straddle;
}

namespace {

std::optional<DisconnectionWitness> scan_element_windows(const Interval& I, int e) {
    const auto w = I.windows(e);
    const int len = I.value(e).size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1].lo - w[i].lo >= 3)
            return DisconnectionWitness{I.value(e), Window{w[i].lo, w[i + 1].lo + len - 1}};
    }
    return std::nullopt;
}

}  // namespace

std::optional<DisconnectionWitness> find_disconnected_subinterval(const Interval& I,
                                                                  SubintervalSearch mode) {
    const Permutation one = Permutation::identity(1);
    bool optimized = false;
    int x_idx = -1;
    if (mode != SubintervalSearch::Full && I.sigma() == one && I.tau().size() >= 2) {
        const Permutation x = exterior(I.tau());
        if (x.size() != 2) {
            x_idx = *I.index_of(x);  // x(tau) <= tau and sigma = 1 <= x(tau)
            optimized = true;
        }
    }
    if (mode == SubintervalSearch::Optimized && !optimized)
        throw InvalidInputError("optimized subinterval search needs sigma = 1, |x(tau)| != 2");

    if (optimized) {
        const auto desc = I.descendants();
        for (int e = 0; e < I.size(); ++e) {
            if (!desc[static_cast<std::size_t>(e)].test(x_idx)) continue;
            if (auto wit = scan_element_windows(I, e)) return wit;
        }
        return std::nullopt;
    }
    for (int e = 0; e < I.size(); ++e)
        if (auto wit = scan_element_windows(I, e)) return wit;
    return std::nullopt;
}

bool has_disconnected_subinterval(const Permutation& sigma, const Permutation& tau) {
    const int n = tau.size();
    const int k0 = sigma.size();
    if (k0 > n) return false;
    if (!contains(sigma, tau)) return false;

    // Non-overlapping storage of per-class previous start and the cached
    // "contains sigma" verdict; small lengths first so typical witnesses are
    // found after O(n) work.
    struct ClassState {
        int prev_start;
        signed char above_sigma;  // -1 unknown, 0 no, 1 yes
    };
    std::unordered_map<Permutation, ClassState, PermutationHash> state;
    for (int k = k0; k <= n - 3; ++k) {
        state.clear();
        const auto reds = window_reductions(tau, k);
        for (int s = 0; s < static_cast<int>(reds.size()); ++s) {
            const Permutation& p = reds[static_cast<std::size_t>(s)];
            auto [it, inserted] = state.emplace(p, ClassState{s, -1});
            if (inserted) continue;
            if (s - it->second.prev_start >= 3) {
                if (it->second.above_sigma < 0)
                    it->second.above_sigma = contains(sigma, p) ? 1 : 0;
                if (it->second.above_sigma == 1) return true;
            }
            it->second.prev_start = s;
        }
    }
    return false;
}

namespace {

/// Labels along an arbitrary top-down cover path of interval elements.
std::vector<ChainLabel> label_path(const Interval& I, const std::vector<int>& path) {
    std::vector<ChainLabel> labels;
    if (path.size() < 2) return labels;
    labels.reserve(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Permutation& upper = I.value(path[i]);
        const bool left_delete = I.value(path[i + 1]) == drop_first(upper);
        labels.push_back(ChainLabel{left_delete ? 0 : 1, 0});
    }
    for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        if (!straddles(I.value(path[i + 2]), I.value(path[i]))) continue;
        if (labels[i] == ChainLabel{0, 0} && labels[i + 1] == ChainLabel{0, 0}) continue;
        labels[i + 1] = ChainLabel{labels[i].base, labels[i].eps_mult + 1};
    }
    return labels;
}

bool weakly_increasing(const std::vector<ChainLabel>& labels, std::size_t from) {
    for (std::size_t i = from; i + 1 < labels.size(); ++i)
        if (labels[i + 1] < labels[i]) return false;
    return true;
}

/// Lexicographic comparison of label sequences (suffixes starting at `from`).
int lex_compare(const std::vector<ChainLabel>& a, const std::vector<ChainLabel>& b,
                std::size_t from) {
    for (std::size_t i = from; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    return 0;
}

/// All top-down cover paths from element `from` down to element `to`,
/// restricted to elements above `to`.
std::vector<std::vector<int>> paths_between(const Interval& I, int from, int to,
                                            const std::vector<Bitset>& desc) {
    std::vector<std::vector<int>> out;
    std::vector<int> stack{from};
    std::vector<std::size_t> pos{0};
    while (!stack.empty()) {
        const int cur = stack.back();
        if (cur == to) {
            out.push_back(stack);
            stack.pop_back();
            pos.pop_back();
            continue;
        }
        const auto kids = I.covers(cur);
        bool advanced = false;
        while (pos.back() < kids.size()) {
            const int nxt = kids[pos.back()++];
            if (!desc[static_cast<std::size_t>(nxt)].test(to)) continue;
            stack.push_back(nxt);
            pos.push_back(0);
            advanced = true;
            break;
        }
        if (!advanced && stack.back() == cur) {
            stack.pop_back();
            pos.pop_back();
        }
    }
    return out;
}

}  // namespace

LabeledChain cl_labels(const Interval& I, const MaximalChain& C) {
    if (C.elems.size() != static_cast<std::size_t>(I.rank_count()) + 1 ||
        C.elems.front() != I.top() || C.elems.back() != I.bottom())
        throw InvalidInputError("not a maximal chain of this interval");
    for (std::size_t i = 0; i + 1 < C.elems.size(); ++i) {
        const auto kids = I.covers(C.elems[i]);
        if (std::find(kids.begin(), kids.end(), C.elems[i + 1]) == kids.end())
            throw InvalidInputError("not a maximal chain of this interval");
    }
    return LabeledChain{C, label_path(I, C.elems)};
}

DualClResult verify_dual_cl(const Interval& I, std::int64_t max_chains) {
    const std::int64_t total = I.count_maximal_chains();
    if (total > max_chains)
        throw CapExceededError("dual CL verification cap: " + std::to_string(total) +
                               " maximal chains exceed " + std::to_string(max_chains));
    const auto desc = I.descendants();

    DualClResult result;
    for (int b = 0; b < I.size(); ++b) {
        const auto roots = paths_between(I, I.top(), b, desc);
        for (int a = 0; a < b; ++a) {
            if (!desc[static_cast<std::size_t>(b)].test(a)) continue;
            const auto chains = paths_between(I, b, a, desc);
            for (const auto& root : roots) {
                // Concatenate root (tau..beta) with each chain (beta..alpha);
                // labels within [alpha, beta] are the last |chain|-1 entries.
                std::vector<std::vector<ChainLabel>> labeled;
                labeled.reserve(chains.size());
                std::vector<int> path(root);
                for (const auto& chain : chains) {
                    path.resize(root.size());
                    path.insert(path.end(), chain.begin() + 1, chain.end());
                    labeled.push_back(label_path(I, path));
                }
                const std::size_t seg = root.size() - 1;  // first in-interval label index
                int increasing = -1;
                int increasing_count = 0;
                for (std::size_t c = 0; c < labeled.size(); ++c)
                    if (weakly_increasing(labeled[c], seg)) {
                        ++increasing_count;
                        increasing = static_cast<int>(c);
                    }
                bool lex_violated = false;
                if (increasing_count == 1) {
                    for (std::size_t c = 0; c < labeled.size(); ++c) {
                        if (static_cast<int>(c) == increasing) continue;
                        if (lex_compare(labeled[static_cast<std::size_t>(increasing)],
                                        labeled[c], seg) >= 0) {
                            lex_violated = true;
                            break;
                        }
                    }
                }
                if (increasing_count != 1 || lex_violated) {
                    DualClCounterexample ce;
                    ce.alpha = I.value(a);
                    ce.beta = I.value(b);
                    for (int e : root) ce.root.push_back(I.value(e));
                    ce.increasing_chain_count = increasing_count;
                    ce.lex_least_violated = lex_violated;
                    result.ok = false;
                    result.counterexample = ce;
                    return result;
                }
            }
        }
    }
    result.ok = true;
    return result;
}

bool is_shellable(const Interval& I) {
    return !find_disconnected_subinterval(I, SubintervalSearch::Auto).has_value();
}

namespace {

/// Shelling condition for the facet prefix F_0..F_k (checking facet k): every
/// earlier intersection with F_k must lie inside one of codimension 1.
bool shelling_step_ok(const std::vector<std::uint64_t>& masks, int k, int facet_size) {
    const std::uint64_t fk = masks[static_cast<std::size_t>(k)];
    for (int j = 0; j < k; ++j) {
        const std::uint64_t inter = masks[static_cast<std::size_t>(j)] & fk;
        bool covered = false;
        for (int j2 = 0; j2 < k && !covered; ++j2) {
            const std::uint64_t other = masks[static_cast<std::size_t>(j2)] & fk;
            if (__builtin_popcountll(other) == facet_size - 1 && (inter & ~other) == 0)
                covered = true;
        }
        if (!covered) return false;
    }
    return true;
}

bool is_shelling_order(const std::vector<std::uint64_t>& masks, int facet_size) {
    for (int k = 1; k < static_cast<int>(masks.size()); ++k)
        if (!shelling_step_ok(masks, k, facet_size)) return false;
    return true;
}

bool exhaustive_shelling_search(std::vector<std::uint64_t>& masks, int chosen, int facet_size) {
    if (chosen == static_cast<int>(masks.size())) return true;
    for (int i = chosen; i < static_cast<int>(masks.size()); ++i) {
        std::swap(masks[static_cast<std::size_t>(chosen)], masks[static_cast<std::size_t>(i)]);
        if (shelling_step_ok(masks, chosen, facet_size) &&
            exhaustive_shelling_search(masks, chosen + 1, facet_size))
            return true;
        std::swap(masks[static_cast<std::size_t>(chosen)], masks[static_cast<std::size_t>(i)]);
    }
    return false;
}

}  // namespace

ShellingCheck verify_shelling_order(const Interval& I, std::int64_t max_chains,
                                    int exhaustive_cap) {
    if (I.size() > 64)
        throw CapExceededError("shelling check supports at most 64 interval elements");
    ShellingCheck out;
    const int N = I.rank_count();
    if (N < 2) {
        // No facets (or the complex is empty); vacuously shellable.
        out.cl_order_is_shelling = true;
        return out;
    }
    auto chains = maximal_chains(I, max_chains);
    std::vector<std::pair<std::vector<ChainLabel>, std::size_t>> keyed;
    keyed.reserve(chains.size());
    for (std::size_t c = 0; c < chains.size(); ++c)
        keyed.emplace_back(label_path(I, chains[c].elems), c);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
        const int cmp = lex_compare(x.first, y.first, 0);
        if (cmp != 0) return cmp < 0;
        return chains[x.second].elems < chains[y.second].elems;
    });

    const int facet_size = N - 1;
    std::vector<std::uint64_t> masks;
    masks.reserve(chains.size());
    for (const auto& [labels, c] : keyed) {
        std::uint64_t m = 0;
        const auto& elems = chains[c].elems;
        for (std::size_t i = 1; i + 1 < elems.size(); ++i) m |= 1ull << elems[i];
        masks.push_back(m);
    }

    out.cl_order_is_shelling = is_shelling_order(masks, facet_size);
    if (!out.cl_order_is_shelling && static_cast<int>(masks.size()) <= exhaustive_cap)
        out.some_order_shells = exhaustive_shelling_search(masks, 0, facet_size);
    return out;
}

TwoPlusTwoResult is_two_plus_two_free(const Interval& I) {
    const auto desc = I.descendants();
    auto leq = [&](int lo, int hi) { return desc[static_cast<std::size_t>(hi)].test(lo); };
    auto comparable = [&](int u, int v) { return leq(u, v) || leq(v, u); };

    std::vector<std::pair<int, int>> pairs;  // (low, high), low < high
    for (int hi = 0; hi < I.size(); ++hi)
        for (int lo = 0; lo < hi; ++lo)
            if (leq(lo, hi)) pairs.emplace_back(lo, hi);

    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto [a, b] = pairs[i];
            const auto [c, d] = pairs[j];
            if (a == c || a == d || b == c || b == d) continue;
            if (comparable(a, c) || comparable(a, d) || comparable(b, c) || comparable(b, d))
                continue;
            return TwoPlusTwoResult{false, std::array<int, 4>{a, b, c, d}};
        }
    return TwoPlusTwoResult{true, std::nullopt};
}

}  // namespace consec
