#include "consec/interval.hpp"

#include <algorithm>
#include <cassert>

#include "consec/errors.hpp"

namespace consec {

WindowClassDag::WindowClassDag(const Permutation& tau) : tau_(tau) {
    const int n = tau.size();
    len_offsets_.assign(static_cast<std::size_t>(n) + 2, 0);

    std::unordered_map<Permutation, int, PermutationHash> ids;
    ids.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

    // One pass per window length; classes of each length are later sorted
    // lexicographically for deterministic ids.
    std::vector<std::vector<int>> by_len(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        const auto reds = window_reductions(tau, k);
        for (int s = 0; s < static_cast<int>(reds.size()); ++s) {
            const Permutation& p = reds[static_cast<std::size_t>(s)];
            auto [it, inserted] = ids.emplace(p, static_cast<int>(values_.size()));
            if (inserted) {
                values_.push_back(p);
                windows_.emplace_back();
                by_len[static_cast<std::size_t>(k)].push_back(it->second);
            }
            windows_[static_cast<std::size_t>(it->second)].push_back(Window{s + 1, s + k});
        }
    }

    // Renumber classes: lengths ascending, values lexicographic within a
    // length.
    std::vector<int> order;
    order.reserve(values_.size());
    for (int k = 1; k <= n; ++k) {
        auto& v = by_len[static_cast<std::size_t>(k)];
        std::sort(v.begin(), v.end(), [&](int a, int b) {
            return values_[static_cast<std::size_t>(a)] < values_[static_cast<std::size_t>(b)];
        });
        for (int c : v) order.push_back(c);
    }
    std::vector<int> new_id(values_.size());
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
        new_id[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    std::vector<Permutation> values(values_.size());
    std::vector<std::vector<Window>> windows(values_.size());
    for (std::size_t old = 0; old < values_.size(); ++old) {
        values[static_cast<std::size_t>(new_id[old])] = values_[old];
        windows[static_cast<std::size_t>(new_id[old])] = std::move(windows_[old]);
    }
    values_ = std::move(values);
    windows_ = std::move(windows);

    len_members_.resize(values_.size());
    for (int i = 0; i < static_cast<int>(values_.size()); ++i) len_members_[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k <= n; ++k) {
        len_offsets_[static_cast<std::size_t>(k) + 1] =
            len_offsets_[static_cast<std::size_t>(k)] +
            (k == 0 ? 0 : static_cast<int>(by_len[static_cast<std::size_t>(k)].size()));
    }

    // Drop links via the representative window of each class.
    child_first_.assign(values_.size(), -1);
    child_last_.assign(values_.size(), -1);
    ids.clear();
    for (int c = 0; c < static_cast<int>(values_.size()); ++c) ids.emplace(values_[static_cast<std::size_t>(c)], c);
    for (int c = 0; c < static_cast<int>(values_.size()); ++c) {
        const Window rep = windows_[static_cast<std::size_t>(c)].front();
        if (rep.length() == 1) continue;
        child_first_[static_cast<std::size_t>(c)] = ids.at(window_reduce(tau_, rep.lo + 1, rep.hi));
        child_last_[static_cast<std::size_t>(c)] = ids.at(window_reduce(tau_, rep.lo, rep.hi - 1));
    }
}

Interval WindowClassDag::interval(const Permutation& sigma) const {
    const int n = tau_.size();
    const int k0 = sigma.size();
    if (k0 > n) throw NotComparableError("sigma longer than tau");

    int sigma_class = -1;
    for (int c : classes_of_length(k0))
        if (value(c) == sigma) {
            sigma_class = c;
            break;
        }
    if (sigma_class < 0) throw NotComparableError("sigma not contained in tau");

    // A class belongs to [sigma, tau] iff sigma is reachable by repeatedly
    // dropping an end; propagate membership upward by length.
    std::vector<char> in(values_.size(), 0);
    in[static_cast<std::size_t>(sigma_class)] = 1;
    for (int k = k0 + 1; k <= n; ++k)
        for (int c : classes_of_length(k)) {
            const int cf = child_first_[static_cast<std::size_t>(c)];
            const int cl = child_last_[static_cast<std::size_t>(c)];
            in[static_cast<std::size_t>(c)] =
                (cf >= 0 && in[static_cast<std::size_t>(cf)]) || (cl >= 0 && in[static_cast<std::size_t>(cl)]);
        }

    Interval I;
    std::vector<int> elem_of_class(values_.size(), -1);
    I.rank_offsets_.push_back(0);
    for (int k = k0; k <= n; ++k) {
        for (int c : classes_of_length(k))
            if (in[static_cast<std::size_t>(c)]) {
                elem_of_class[static_cast<std::size_t>(c)] = static_cast<int>(I.values_.size());
                I.rank_members_.push_back(static_cast<int>(I.values_.size()));
                I.values_.push_back(value(c));
                I.windows_off_.push_back(I.windows_flat_.size());
                const auto& w = windows_[static_cast<std::size_t>(c)];
                I.windows_flat_.insert(I.windows_flat_.end(), w.begin(), w.end());
            }
        I.rank_offsets_.push_back(static_cast<int>(I.values_.size()));
    }
    I.windows_off_.push_back(I.windows_flat_.size());

    // covers: the drop children that stay in the interval, deduplicated
    // (the two coincide exactly for monotone elements).
    I.covers_off_.push_back(0);
    std::vector<std::vector<int>> parents(I.values_.size());
    for (int k = k0; k <= n; ++k)
        for (int c : classes_of_length(k)) {
            const int e = elem_of_class[static_cast<std::size_t>(c)];
            if (e < 0) continue;
            if (k > k0) {
                const int cf = child_first_[static_cast<std::size_t>(c)];
                const int cl = child_last_[static_cast<std::size_t>(c)];
                int a = cf >= 0 ? elem_of_class[static_cast<std::size_t>(cf)] : -1;
                int b = cl >= 0 ? elem_of_class[static_cast<std::size_t>(cl)] : -1;
                if (a >= 0 && b >= 0 && a > b) std::swap(a, b);
                if (a >= 0) {
                    I.covers_flat_.push_back(a);
                    parents[static_cast<std::size_t>(a)].push_back(e);
                }
                if (b >= 0 && b != a) {
                    I.covers_flat_.push_back(b);
                    parents[static_cast<std::size_t>(b)].push_back(e);
                }
            }
            I.covers_off_.push_back(I.covers_flat_.size());
        }

    I.parents_off_.push_back(0);
    for (auto& p : parents) {
        std::sort(p.begin(), p.end());
        I.parents_flat_.insert(I.parents_flat_.end(), p.begin(), p.end());
        I.parents_off_.push_back(I.parents_flat_.size());
    }
    return I;
}

Interval build_interval(const Permutation& sigma, const Permutation& tau) {
    return WindowClassDag(tau).interval(sigma);
}

std::optional<int> Interval::index_of(const Permutation& p) const {
    const int r = p.size() - sigma().size();
    if (r < 0 || r > rank_count()) return std::nullopt;
    for (int e : elements_of_rank(r))
        if (value(e) == p) return e;
    return std::nullopt;
}

std::vector<int> Interval::rank_sizes() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(rank_count()) + 1);
    for (int r = 0; r <= rank_count(); ++r)
        out.push_back(static_cast<int>(elements_of_rank(r).size()));
    return out;
}

std::vector<Bitset> Interval::descendants() const {
    std::vector<Bitset> d(static_cast<std::size_t>(size()), Bitset(size()));
    for (int e = 0; e < size(); ++e) {
        d[static_cast<std::size_t>(e)].set(e);
        for (int c : covers(e)) d[static_cast<std::size_t>(e)].or_with(d[static_cast<std::size_t>(c)]);
    }
    return d;
}

std::vector<Bitset> Interval::ancestors() const {
    std::vector<Bitset> a(static_cast<std::size_t>(size()), Bitset(size()));
    for (int e = size() - 1; e >= 0; --e) {
        a[static_cast<std::size_t>(e)].set(e);
        for (int p : covered_by(e)) a[static_cast<std::size_t>(e)].or_with(a[static_cast<std::size_t>(p)]);
    }
    return a;
}

std::int64_t Interval::count_maximal_chains() const {
    std::vector<std::int64_t> paths(static_cast<std::size_t>(size()), 0);
    paths[0] = 1;  // sigma
    for (int e = 1; e < size(); ++e)
        for (int c : covers(e)) paths[static_cast<std::size_t>(e)] += paths[static_cast<std::size_t>(c)];
    return paths[static_cast<std::size_t>(size()) - 1];
}

std::vector<int> rank_sizes(const Interval& I) { return I.rank_sizes(); }

ChainCheck is_chain(const Interval& I) {
    ChainCheck out;
    out.tau_monotone = is_monotone(I.tau());
    const auto sigma_windows = I.windows(I.bottom());
    const int n = I.tau().size();
    if (sigma_windows.size() == 1) {
        const Window w = sigma_windows[0];
        if (w.lo == 1 || w.hi == n) out.unique_occurrence = w;
    }
    out.chain = out.tau_monotone || out.unique_occurrence.has_value();

    // Structural cross-check: a chain is exactly "every rank has one element".
    bool structural = true;
    for (int r = 0; r <= I.rank_count(); ++r)
        if (I.elements_of_rank(r).size() != 1) {
            structural = false;
            break;
        }
    if (structural != out.chain)
        throw Error("chain classification disagrees with rank structure");
    return out;
}

std::optional<std::pair<int, int>> is_product_of_two_chains(const Interval& I) {
    const auto sigma_windows = I.windows(I.bottom());
    if (sigma_windows.size() != 1) return std::nullopt;
    const Window w = sigma_windows[0];
    const int n = I.tau().size();
    const int len_a = w.lo;          // i
    const int len_b = n - w.hi + 1;  // |tau| - j + 1
    if (static_cast<std::int64_t>(len_a) * len_b != I.size())
        throw Error("unique occurrence but element count is not a grid");

    // phi(a, b) deletes a entries from the left and b from the right; the map
    // must be a bijection onto the interval, order-reversing both ways.
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(len_a),
                                       std::vector<int>(static_cast<std::size_t>(len_b), -1));
    std::vector<char> seen(static_cast<std::size_t>(I.size()), 0);
    for (int a = 0; a < len_a; ++a)
        for (int b = 0; b < len_b; ++b) {
            const Permutation p = window_reduce(I.tau(), 1 + a, n - b);
            auto idx = I.index_of(p);
            if (!idx || seen[static_cast<std::size_t>(*idx)])
                throw Error("grid map is not a bijection onto the interval");
            seen[static_cast<std::size_t>(*idx)] = 1;
            grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = *idx;
        }
    const auto desc = I.descendants();
    for (int a = 0; a < len_a; ++a)
        for (int b = 0; b < len_b; ++b)
            for (int a2 = 0; a2 < len_a; ++a2)
                for (int b2 = 0; b2 < len_b; ++b2) {
                    const bool leq_grid = a >= a2 && b >= b2;  // phi is order-reversing
                    const bool leq_poset = desc[static_cast<std::size_t>(
                                                    grid[static_cast<std::size_t>(a2)][static_cast<std::size_t>(b2)])]
                                               .test(grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                    if (leq_grid != leq_poset)
                        throw Error("grid map is not an order isomorphism");
                }
    return std::make_pair(len_a, len_b);
}

std::vector<MaximalChain> maximal_chains(const Interval& I, std::int64_t max_chains) {
    const std::int64_t total = I.count_maximal_chains();
    if (total > max_chains)
        throw CapExceededError("maximal chain count " + std::to_string(total) +
                               " exceeds cap " + std::to_string(max_chains));
    std::vector<MaximalChain> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> stack{I.top()};
    // Iterative DFS over cover edges, children in ascending index order.
    std::vector<std::size_t> pos{0};
    while (!stack.empty()) {
        const int cur = stack.back();
        if (cur == I.bottom()) {
            out.push_back(MaximalChain{stack});
            stack.pop_back();
            pos.pop_back();
            continue;
        }
        const auto kids = I.covers(cur);
        if (pos.back() < kids.size()) {
            const int nxt = kids[pos.back()++];
            stack.push_back(nxt);
            pos.push_back(0);
        } else {
            stack.pop_back();
            pos.pop_back();
        }
    }
    return out;
}

std::vector<std::vector<int>> order_complex_facets(const Interval& I, std::int64_t max_chains) {
    std::vector<std::vector<int>> out;
    if (I.rank_count() < 2) return out;
    for (const auto& chain : maximal_chains(I, max_chains)) {
        std::vector<int> facet(chain.elems.begin() + 1, chain.elems.end() - 1);
        std::sort(facet.begin(), facet.end());
        out.push_back(std::move(facet));
    }
    return out;
}

}  // namespace consec
