#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "consec/permutation.hpp"
#include "consec/topology.hpp"

namespace consec {

/// Runtime limits and defaults shared by the CLI and batch drivers.
struct RunConfig {
    std::uint64_t seed = 42;
    std::int64_t max_chains = 1'000'000;  // maximal-chain enumeration cap
    std::int64_t max_cl_chains = 500;     // dual CL verification cap
    int max_oracle_elements = 22;         // k-family oracle cap
    int max_exhaustive_n = 10;            // exhaustive enumeration cap
    int threads = 1;
    bool compact = false;  // digit form for permutations of length <= 9
};

/// Aggregated per-interval verdicts, serialized as the `classify` output.
struct ClassificationReport {
    struct Witness {
        std::string pi;
        Window window;
        bool operator==(const Witness& o) const { return pi == o.pi && window == o.window; }
    };

    std::string sigma;
    std::string tau;
    std::vector<int> rank_sizes;
    int breaking_rank = -1;
    bool chain = false;
    int mobius_value = 0;
    std::string mobius_branch;
    bool disconnected = false;
    std::optional<Witness> disconnection_witness;
    bool shellable = false;
    bool two_plus_two_free = false;
    std::optional<bool> cl_verified;  // unset when the chain cap was exceeded
    bool rank_unimodal = false;
    bool strongly_sperner = false;
    std::string sperner_method;  // "oracle" or "constructive"
    bool lattice = false;
    std::optional<std::string> exterior;  // unset when |tau| < 2
    std::optional<std::string> interior;  // unset when |tau| < 3
    std::optional<bool> has_carrier;      // |tau| = 2 counts as true; unset when |tau| < 2
    std::vector<std::string> cap_exceeded;  // fields skipped because of caps

    bool operator==(const ClassificationReport& o) const;
};

ClassificationReport run_classification(const Permutation& sigma, const Permutation& tau,
                                        const RunConfig& config = {});

std::string report_to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const std::string& text);

/// Human-readable one-verdict-per-line rendering.
std::string report_to_text(const ClassificationReport& r);

}  // namespace consec
