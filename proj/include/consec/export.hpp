#pragma once

#include <cstdint>
#include <string>

#include "consec/interval.hpp"

namespace consec {

/// Hasse diagram as DOT: one node per element labeled with the permutation
/// text, one edge per cover drawn downward (parent -> child).
std::string to_dot(const Interval& I, bool compact = false);

/// DOT with each edge annotated by the chain-edge labels it receives across
/// all maximal chains ("0", "1", "1-e", "1-2e", ...; chain-dependent edges
/// list every label, separated by '|').
std::string to_dot_labeled(const Interval& I, std::int64_t max_chains = 1'000'000,
                           bool compact = false);

/// JSON dump: {"sigma", "tau", "ranks": [[perm, ...], ...],
/// "covers": [[child, parent], ...]}.
std::string interval_to_json(const Interval& I, bool compact = false);

}  // namespace consec
