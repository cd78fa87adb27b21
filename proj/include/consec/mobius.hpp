#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "consec/interval.hpp"
#include "consec/permutation.hpp"

namespace consec {

/// Which case of the Mobius recursion produced the value.
enum class MobiusBranch {
    RecursiveCarrier,   // rank > 2, sigma <= x(tau) and x(tau) not<= i(tau)
    Rank2NonMonotone,   // rank 2, tau not monotone, sigma in {i(tau), x(tau)}
    SmallRank,          // rank < 2: (-1)^rank
    Zero,               // everything else
};

std::string to_string(MobiusBranch b);

struct MobiusResult {
    int value = 0;
    MobiusBranch branch = MobiusBranch::Zero;
    /// The (sigma, tau') pairs visited, outermost first; filled only when
    /// requested.
    std::vector<std::pair<Permutation, Permutation>> trace;
};

struct PermPairHash {
    std::size_t operator()(const std::pair<Permutation, Permutation>& p) const {
        std::size_t h = p.first.hash();
        return h ^ (p.second.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
};

/// Memo table for batch Mobius queries. Not synchronized; use one per thread.
using MobiusMemo =
    std::unordered_map<std::pair<Permutation, Permutation>, int, PermPairHash>;

/// mu(sigma, tau) by the carrier-element recursion. Throws NotComparableError
/// when sigma is not contained in tau.
MobiusResult mobius_recursive(const Permutation& sigma, const Permutation& tau,
                              bool want_trace = false, MobiusMemo* memo = nullptr);

/// Definitional Mobius value computed bottom-up on the interval DAG:
/// sum over sigma <= pi <= rho of mu(sigma, pi) = [rho == sigma].
int mobius_oracle(const Interval& I);
int mobius_oracle(const Permutation& sigma, const Permutation& tau);

/// tau has a carrier element iff x(tau) is not contained in i(tau).
/// Requires |tau| >= 3 (the interior must exist).
bool has_carrier_element(const Permutation& tau);

/// The carrier element of [sigma, tau]: x(tau) when
/// sigma <= x(tau) not<= i(tau), otherwise nothing. Requires |tau| >= 3.
std::optional<Permutation> carrier_of_interval(const Permutation& sigma, const Permutation& tau);

}  // namespace consec
