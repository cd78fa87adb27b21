#include "consec/mobius.hpp"

#include "consec/errors.hpp"

namespace consec {

std::string to_string(MobiusBranch b) {
    switch (b) {
        case MobiusBranch::RecursiveCarrier: return "recursive-carrier";
        case MobiusBranch::Rank2NonMonotone: return "rank2-nonmonotone";
        case MobiusBranch::SmallRank: return "small-rank";
        case MobiusBranch::Zero: return "zero";
    }
    return "?";
}

namespace {

int mobius_value(const Permutation& sigma, const Permutation& tau, MobiusMemo* memo,
                 MobiusBranch* branch_out,
                 std::vector<std::pair<Permutation, Permutation>>* trace) {
    if (trace) trace->emplace_back(sigma, tau);
    const int d = tau.size() - sigma.size();

    if (d < 2) {
        if (branch_out) *branch_out = MobiusBranch::SmallRank;
        return d == 0 ? 1 : -1;
    }

    const Permutation x = exterior(tau);
    const Permutation itau = interior(tau);

    if (d == 2) {
        if (!is_monotone(tau) && (sigma == itau || sigma == x)) {
            if (branch_out) *branch_out = MobiusBranch::Rank2NonMonotone;
            return 1;
        }
        if (branch_out) *branch_out = MobiusBranch::Zero;
        return 0;
    }

    if (contains(sigma, x) && !contains(x, itau)) {
        if (branch_out) *branch_out = MobiusBranch::RecursiveCarrier;
        if (memo) {
            const auto key = std::make_pair(sigma, x);
            if (auto it = memo->find(key); it != memo->end()) {
                if (trace) trace->emplace_back(sigma, x);
                return it->second;
            }
            const int v = mobius_value(sigma, x, memo, nullptr, trace);
            memo->emplace(key, v);
            return v;
        }
        return mobius_value(sigma, x, memo, nullptr, trace);
    }
    if (branch_out) *branch_out = MobiusBranch::Zero;
    return 0;
}

}  // namespace

MobiusResult mobius_recursive(const Permutation& sigma, const Permutation& tau, bool want_trace,
                              MobiusMemo* memo) {
    if (!contains(sigma, tau))
        throw NotComparableError("mobius: sigma not contained in tau");
    MobiusResult r;
    r.value = mobius_value(sigma, tau, memo, &r.branch, want_trace ? &r.trace : nullptr);
    return r;
}

int mobius_oracle(const Interval& I) {
    // Single bottom-up pass: mu[e] = [e == sigma] - sum of mu over elements
    // strictly below e.
    const auto desc = I.descendants();
    std::vector<int> mu(static_cast<std::size_t>(I.size()), 0);
    for (int e = 0; e < I.size(); ++e) {
        int s = e == I.bottom() ? 1 : 0;
        const auto& below = desc[static_cast<std::size_t>(e)];
        for (int d = 0; d < e; ++d)
            if (below.test(d)) s -= mu[static_cast<std::size_t>(d)];
        mu[static_cast<std::size_t>(e)] = s;
    }
    return mu[static_cast<std::size_t>(I.size()) - 1];
}

int mobius_oracle(const Permutation& sigma, const Permutation& tau) {
    return mobius_oracle(build_interval(sigma, tau));
}

bool has_carrier_element(const Permutation& tau) {
    if (tau.size() < 3) throw UndefinedError("carrier undefined for |tau| < 3");
    return !contains(exterior(tau), interior(tau));
}

std::optional<Permutation> carrier_of_interval(const Permutation& sigma, const Permutation& tau) {
    if (tau.size() < 3) throw UndefinedError("carrier undefined for |tau| < 3");
    const Permutation x = exterior(tau);
    if (contains(sigma, x) && !contains(x, interior(tau))) return x;
    return std::nullopt;
}

}  // namespace consec
