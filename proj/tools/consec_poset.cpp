// Command-line front end for the consecutive pattern poset library:
// per-interval classification, exact censuses and tables over S_n, seeded
// sampling experiments, and Hasse-diagram exports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "consec/classify.hpp"
#include "consec/enumerate.hpp"
#include "consec/errors.hpp"
#include "consec/export.hpp"
#include "consec/exterior_stats.hpp"
#include "consec/interval.hpp"
#include "consec/mobius.hpp"
#include "consec/rank_analysis.hpp"
#include "consec/rational.hpp"

namespace {

using consec::Permutation;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotComparable = 3;
constexpr int kExitCapExceeded = 4;

struct GlobalOpts {
    std::string format = "json";  // json|csv|text
    consec::RunConfig config;
    std::string output_path;  // empty = stdout

    std::string perm(const Permutation& p) const {
        return consec::to_string(p, config.compact);
    }
};

/// Writes atomically when a path is given: temp file in the same directory,
/// renamed into place only after a complete write.
void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.output_path.empty()) {
        std::cout << payload;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(g.output_path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw consec::InvalidInputError("cannot open output file " + tmp.string());
        out << payload;
        if (!out) throw consec::Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

consec::SampleStat parse_sample_stat(const std::string& name) {
    if (name == "exterior-length-mean" || name == "exterior-length")
        return consec::SampleStat::ExteriorLengthMean;
    if (name == "has-carrier") return consec::SampleStat::HasCarrier;
    if (name == "mu-zero" || name == "mu-zero-given-sigma")
        return consec::SampleStat::MuZeroGivenSigma;
    if (name == "disconnected-subinterval") return consec::SampleStat::DisconnectedSubinterval;
    if (name == "contains-sigma") return consec::SampleStat::ContainsSigma;
    throw consec::InvalidInputError("unknown sample statistic: " + name);
}

consec::CensusStat parse_census_stat(const std::string& name) {
    if (name == "exterior-length") return consec::CensusStat::ExteriorLength;
    if (name == "has-carrier") return consec::CensusStat::HasCarrier;
    if (name == "mu-zero") return consec::CensusStat::MuZero;
    if (name == "disconnected-subinterval") return consec::CensusStat::DisconnectedSubinterval;
    if (name == "contains-sigma") return consec::CensusStat::ContainsSigma;
    if (name == "lattice") return consec::CensusStat::Lattice;
    throw consec::InvalidInputError("unknown census statistic: " + name);
}

int run_classify(const GlobalOpts& g, const std::string& sigma_text,
                 const std::string& tau_text) {
    const Permutation sigma = consec::parse_permutation(sigma_text);
    const Permutation tau = consec::parse_permutation(tau_text);
    const auto report = consec::run_classification(sigma, tau, g.config);
    if (g.format == "text")
        emit(g, consec::report_to_text(report));
    else
        emit(g, consec::report_to_json(report) + "\n");
    return report.cap_exceeded.empty() ? kExitOk : kExitCapExceeded;
}

int run_mobius(const GlobalOpts& g, const std::string& sigma_text, const std::string& tau_text,
               bool want_trace, bool want_oracle) {
    const Permutation sigma = consec::parse_permutation(sigma_text);
    const Permutation tau = consec::parse_permutation(tau_text);
    const auto res = consec::mobius_recursive(sigma, tau, want_trace);
    ordered_json j;
    j["sigma"] = g.perm(sigma);
    j["tau"] = g.perm(tau);
    j["value"] = res.value;
    j["branch"] = consec::to_string(res.branch);
    if (want_trace) {
        auto trace = ordered_json::array();
        for (const auto& [s, t] : res.trace)
            trace.push_back(ordered_json::array({g.perm(s), g.perm(t)}));
        j["trace"] = trace;
    }
    if (want_oracle) {
        const int oracle = consec::mobius_oracle(sigma, tau);
        j["oracle"] = {{"value", oracle}, {"agrees", oracle == res.value}};
    }
    emit(g, j.dump(2) + "\n");
    return kExitOk;
}

int run_ranks(const GlobalOpts& g, const std::string& sigma_text, const std::string& tau_text,
              int chains_i) {
    const Permutation sigma = consec::parse_permutation(sigma_text);
    const Permutation tau = consec::parse_permutation(tau_text);
    const auto I = consec::build_interval(sigma, tau);
    const auto profile = consec::rank_profile(I);
    const auto sperner = consec::is_strongly_sperner(I, g.config.max_oracle_elements);
    ordered_json j;
    j["sigma"] = g.perm(sigma);
    j["tau"] = g.perm(tau);
    j["sizes"] = profile.sizes;
    j["breaking_rank"] = profile.breaking_rank;
    j["peak_rank"] = profile.peak_rank;
    j["unimodal"] = consec::is_rank_unimodal(I);
    j["strongly_sperner"] = {
        {"verdict", sperner.strongly_sperner},
        {"method",
         sperner.method == consec::SpernerResult::Method::Oracle ? "oracle" : "constructive"}};
    j["lattice"] = consec::is_lattice(I);
    if (chains_i > 0) {
        const auto fam = consec::rank_intersecting_chains(I, chains_i);
        ordered_json chains = ordered_json::array();
        for (const auto& chain : fam.chains) {
            ordered_json c = ordered_json::array();
            for (int e : chain) c.push_back(g.perm(I.value(e)));
            chains.push_back(c);
        }
        j["chain_family"] = {{"i", chains_i},
                             {"ranks", {fam.rank_lo, fam.rank_hi}},
                             {"chains", chains}};
    }
    emit(g, j.dump(2) + "\n");
    return kExitOk;
}

int run_table(const GlobalOpts& g, const std::string& statistic, int n_max) {
    if (statistic != "exterior")
        throw consec::InvalidInputError("table supports the 'exterior' statistic");
    const auto table =
        consec::exterior_length_table(n_max, g.config.threads, g.config.max_exhaustive_n);
    if (g.format == "csv") {
        std::string out = "n";
        for (int k = 1; k < n_max; ++k) out += "," + std::to_string(k);
        out += "\n";
        for (int n = table.n_min; n <= table.n_max; ++n) {
            out += std::to_string(n);
            for (int k = 1; k < n_max; ++k)
                out += "," + (k <= n - 1 ? std::to_string(table.count(n, k)) : std::string());
            out += "\n";
        }
        emit(g, out);
    } else {
        ordered_json j;
        j["statistic"] = table.statistic_id;
        ordered_json rows;
        for (int n = table.n_min; n <= table.n_max; ++n)
            rows[std::to_string(n)] = table.rows[static_cast<std::size_t>(n - table.n_min)];
        j["rows"] = rows;
        emit(g, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_sequence(const GlobalOpts& g, const std::string& name, int n_max) {
    if (name != "no-carrier")
        throw consec::InvalidInputError("sequence supports the 'no-carrier' name");
    const auto counts =
        consec::no_carrier_counts(n_max, g.config.threads, g.config.max_exhaustive_n);
    ordered_json j;
    j["sequence"] = "no-carrier";
    j["n_min"] = 2;
    j["counts"] = counts;
    emit(g, j.dump(2) + "\n");
    return kExitOk;
}

int run_census(const GlobalOpts& g, int n, const std::string& stat_name,
               const std::string& sigma_text, bool summary_only, int residues) {
    if (n < 1) throw consec::InvalidInputError("census needs --n >= 1");
    std::optional<Permutation> sigma;
    if (!sigma_text.empty()) sigma = consec::parse_permutation(sigma_text);
    const auto stat = parse_census_stat(stat_name);
    const auto result =
        consec::census(n, stat, sigma, g.config.threads, g.config.max_exhaustive_n);

    std::string out;
    if (!summary_only) {
        // One record per tau in lexicographic order, independent of the
        // thread schedule.
        std::int64_t rank = 0;
        consec::for_each_permutation(n, [&](const std::uint8_t* vals, int len) {
            const Permutation tau = consec::unchecked_from_ranks(vals, len);
            ordered_json rec;
            rec["tau"] = g.perm(tau);
            const int v = result.values[static_cast<std::size_t>(rank)];
            if (v < 0)
                rec["value"] = nullptr;
            else
                rec["value"] = v;
            out += rec.dump() + "\n";
            ++rank;
        });
    }
    ordered_json summary;
    summary["n"] = n;
    summary["statistic"] = result.statistic;
    if (sigma) summary["sigma"] = g.perm(*sigma);
    ordered_json agg;
    std::int64_t applicable = 0;
    for (const auto& [value, count] : result.aggregate) {
        agg[std::to_string(value)] = count;
        applicable += count;
    }
    summary["counts"] = agg;
    summary["applicable"] = applicable;
    summary["total"] = consec::factorial(n);
    if (residues > 1) {
        ordered_json mod;
        for (const auto& [value, count] : result.aggregate)
            mod[std::to_string(value)] = count % residues;
        summary["counts_mod"] = {{"modulus", residues}, {"residues", mod}};
    }
    out += summary.dump(2) + "\n";
    emit(g, out);
    return kExitOk;
}

int run_sample(const GlobalOpts& g, int n, std::uint64_t size, const std::string& stat_name,
               const std::string& sigma_text) {
    std::optional<Permutation> sigma;
    if (!sigma_text.empty()) sigma = consec::parse_permutation(sigma_text);
    const auto est = consec::sample_statistic(n, size, g.config.seed,
                                              parse_sample_stat(stat_name), sigma,
                                              g.config.threads);
    ordered_json j;
    j["n"] = est.n;
    j["sample_size"] = est.sample_size;
    j["seed"] = est.seed;
    j["statistic"] = est.statistic;
    if (sigma) j["sigma"] = g.perm(*sigma);
    j["point_estimate"] = est.point_estimate;
    j["standard_error"] = est.standard_error;
    emit(g, j.dump(2) + "\n");
    return kExitOk;
}

int run_export(const GlobalOpts& g, const std::string& sigma_text, const std::string& tau_text,
               bool dot, bool dot_labeled, bool json_dump) {
    const Permutation sigma = consec::parse_permutation(sigma_text);
    const Permutation tau = consec::parse_permutation(tau_text);
    const auto I = consec::build_interval(sigma, tau);
    if (dot_labeled)
        emit(g, consec::to_dot_labeled(I, g.config.max_chains, g.config.compact));
    else if (json_dump || !dot)
        emit(g, consec::interval_to_json(I, g.config.compact) + "\n");
    else
        emit(g, consec::to_dot(I, g.config.compact));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consecutive pattern poset toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json, csv or text")
        ->envname("CONSEC_POSET_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", g.config.seed, "seed for randomized commands (default 42)")
        ->envname("CONSEC_POSET_SEED");
    app.add_option("--threads", g.config.threads, "worker threads for censuses and sampling")
        ->envname("CONSEC_POSET_THREADS");
    app.add_option("--max-chains", g.config.max_chains, "maximal-chain enumeration cap")
        ->envname("CONSEC_POSET_MAX_CHAINS");
    app.add_option("--max-oracle", g.config.max_oracle_elements,
                   "element cap for the k-family oracle")
        ->envname("CONSEC_POSET_MAX_ORACLE");
    app.add_option("--max-exhaustive-n", g.config.max_exhaustive_n,
                   "largest n enumerated exhaustively")
        ->envname("CONSEC_POSET_MAX_EXHAUSTIVE_N");
    app.add_flag("--compact", g.config.compact,
                 "print permutations in digit form when n <= 9")
        ->envname("CONSEC_POSET_COMPACT");
    app.add_option("-o,--output", g.output_path, "write output to a file (atomic rename)");

    std::string sigma_text, tau_text, stat_name = "exterior-length", seq_name = "no-carrier";
    std::string table_stat = "exterior";
    int n = 0, n_max = 0, chains_i = 0, residues = 0;
    std::uint64_t sample_size = 0;
    bool want_trace = false, want_oracle = false, summary_only = false;
    bool dot = false, dot_labeled = false, json_dump = false, json_flag = false;

    auto* classify = app.add_subcommand("classify", "full structural report for [sigma, tau]");
    classify->add_option("sigma", sigma_text)->required();
    classify->add_option("tau", tau_text)->required();

    auto* mobius = app.add_subcommand("mobius", "Mobius function of [sigma, tau]");
    mobius->add_option("sigma", sigma_text)->required();
    mobius->add_option("tau", tau_text)->required();
    mobius->add_flag("--trace", want_trace, "include the recursion trace");
    mobius->add_flag("--oracle", want_oracle, "cross-check against the interval oracle");

    auto* ranks = app.add_subcommand("ranks", "rank structure of [sigma, tau]");
    ranks->add_option("sigma", sigma_text)->required();
    ranks->add_option("tau", tau_text)->required();
    ranks->add_option("--chains", chains_i, "emit the rank-intersecting chain family for i");

    auto* table = app.add_subcommand("table", "exact distribution table over S_2..S_n");
    table->add_option("statistic", table_stat, "statistic name (exterior)");
    table->add_option("--n-max", n_max, "largest n to enumerate")->required();

    auto* sequence = app.add_subcommand("sequence", "exact integer sequence over S_2..S_n");
    sequence->add_option("name", seq_name, "sequence name (no-carrier)");
    sequence->add_option("--n-max", n_max, "largest n to enumerate")->required();

    auto* census = app.add_subcommand("census", "per-permutation records over S_n");
    census->add_option("--n", n, "permutation length")->required();
    census->add_option("--sigma", sigma_text, "pattern for conditional statistics");
    census->add_option("--stat", stat_name, "statistic name")->required();
    census->add_flag("--summary-only", summary_only, "suppress per-permutation records");
    census->add_option("--residues", residues, "also report counts modulo this value");

    auto* sample = app.add_subcommand("sample", "seeded Monte Carlo estimate");
    sample->add_option("--n", n, "permutation length")->required();
    sample->add_option("--size", sample_size, "number of samples")->required();
    sample->add_option("--stat", stat_name, "statistic name")->required();
    sample->add_option("--sigma", sigma_text, "pattern for conditional statistics");
    sample->add_flag("--json", json_flag, "alias for --format json");

    auto* exp = app.add_subcommand("export", "interval dump as DOT or JSON");
    exp->add_option("sigma", sigma_text)->required();
    exp->add_option("tau", tau_text)->required();
    exp->add_flag("--dot", dot, "plain Hasse diagram");
    exp->add_flag("--dot-labeled", dot_labeled, "Hasse diagram with chain-edge labels");
    exp->add_flag("--json", json_dump, "JSON interval dump (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitParse;
    }

    try {
        if (g.config.threads < 1) g.config.threads = 1;
        if (json_flag) g.format = "json";
        if (classify->parsed()) return run_classify(g, sigma_text, tau_text);
        if (mobius->parsed()) return run_mobius(g, sigma_text, tau_text, want_trace, want_oracle);
        if (ranks->parsed()) return run_ranks(g, sigma_text, tau_text, chains_i);
        if (table->parsed()) return run_table(g, table_stat, n_max);
        if (sequence->parsed()) return run_sequence(g, seq_name, n_max);
        if (census->parsed()) return run_census(g, n, stat_name, sigma_text, summary_only, residues);
        if (sample->parsed()) return run_sample(g, n, sample_size, stat_name, sigma_text);
        if (exp->parsed()) return run_export(g, sigma_text, tau_text, dot, dot_labeled, json_dump);
    } catch (const consec::NotComparableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotComparable;
    } catch (const consec::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const consec::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const consec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
