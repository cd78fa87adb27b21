#include "consec/classify.hpp"

#include <json.hpp>

#include "consec/errors.hpp"
#include "consec/interval.hpp"
#include "consec/mobius.hpp"
#include "consec/rank_analysis.hpp"

namespace consec {

using ordered_json = nlohmann::ordered_json;

bool ClassificationReport::operator==(const ClassificationReport& o) const {
    return sigma == o.sigma && tau == o.tau && rank_sizes == o.rank_sizes &&
           breaking_rank == o.breaking_rank && chain == o.chain &&
           mobius_value == o.mobius_value && mobius_branch == o.mobius_branch &&
           disconnected == o.disconnected &&
           disconnection_witness == o.disconnection_witness && shellable == o.shellable &&
           two_plus_two_free == o.two_plus_two_free && cl_verified == o.cl_verified &&
           rank_unimodal == o.rank_unimodal && strongly_sperner == o.strongly_sperner &&
           sperner_method == o.sperner_method && lattice == o.lattice &&
           exterior == o.exterior && interior == o.interior && has_carrier == o.has_carrier &&
           cap_exceeded == o.cap_exceeded;
}

ClassificationReport run_classification(const Permutation& sigma, const Permutation& tau,
                                        const RunConfig& config) {
    const Interval I = build_interval(sigma, tau);

    ClassificationReport r;
    r.sigma = to_string(sigma, config.compact);
    r.tau = to_string(tau, config.compact);
    r.rank_sizes = I.rank_sizes();

    const auto profile = rank_profile(I);
    r.breaking_rank = profile.breaking_rank;
    r.chain = is_chain(I).chain;

    const auto mob = mobius_recursive(sigma, tau);
    r.mobius_value = mob.value;
    r.mobius_branch = to_string(mob.branch);

    r.disconnected = is_disconnected(I);
    const auto witness = find_disconnected_subinterval(I, SubintervalSearch::Full);
    if (witness)
        r.disconnection_witness = ClassificationReport::Witness{
            to_string(witness->pi, config.compact), witness->window};
    r.shellable = !witness.has_value();
    r.two_plus_two_free = is_two_plus_two_free(I).two_plus_two_free;
    try {
        r.cl_verified = verify_dual_cl(I, config.max_cl_chains).ok;
    } catch (const CapExceededError&) {
        r.cap_exceeded.push_back("cl_verified");
    }

    r.rank_unimodal = is_rank_unimodal(I);
    const auto sperner = is_strongly_sperner(I, config.max_oracle_elements);
    r.strongly_sperner = sperner.strongly_sperner;
    r.sperner_method =
        sperner.method == SpernerResult::Method::Oracle ? "oracle" : "constructive";
    r.lattice = is_lattice(I);

    if (tau.size() >= 2) {
        r.exterior = to_string(exterior(tau), config.compact);
        r.has_carrier = tau.size() < 3 ? true : has_carrier_element(tau);
    }
    if (tau.size() >= 3) r.interior = to_string(interior(tau), config.compact);
    return r;
}

namespace {

ordered_json report_json(const ClassificationReport& r) {
    ordered_json j;
    j["sigma"] = r.sigma;
    j["tau"] = r.tau;
    j["rank_sizes"] = r.rank_sizes;
    j["breaking_rank"] = r.breaking_rank;
    j["chain"] = r.chain;
    j["mobius"] = {{"value", r.mobius_value}, {"branch", r.mobius_branch}};
    j["disconnected"] = r.disconnected;
    if (r.disconnection_witness) {
        j["disconnection_witness"] = {
            {"pi", r.disconnection_witness->pi},
            {"window", {r.disconnection_witness->window.lo, r.disconnection_witness->window.hi}}};
    } else {
        j["disconnection_witness"] = nullptr;
    }
    j["shellable"] = r.shellable;
    j["two_plus_two_free"] = r.two_plus_two_free;
    j["cl_verified"] = r.cl_verified ? ordered_json(*r.cl_verified) : ordered_json(nullptr);
    j["rank_unimodal"] = r.rank_unimodal;
    j["strongly_sperner"] = {{"verdict", r.strongly_sperner}, {"method", r.sperner_method}};
    j["lattice"] = r.lattice;
    j["exterior"] = r.exterior ? ordered_json(*r.exterior) : ordered_json(nullptr);
    j["interior"] = r.interior ? ordered_json(*r.interior) : ordered_json(nullptr);
    j["has_carrier"] = r.has_carrier ? ordered_json(*r.has_carrier) : ordered_json(nullptr);
    j["cap_exceeded"] = r.cap_exceeded;
    return j;
}

}  // namespace

std::string report_to_json(const ClassificationReport& r) { return report_json(r).dump(2); }

ClassificationReport report_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    ClassificationReport r;
    r.sigma = j.at("sigma").get<std::string>();
    r.tau = j.at("tau").get<std::string>();
    r.rank_sizes = j.at("rank_sizes").get<std::vector<int>>();
    r.breaking_rank = j.at("breaking_rank").get<int>();
    r.chain = j.at("chain").get<bool>();
    r.mobius_value = j.at("mobius").at("value").get<int>();
    r.mobius_branch = j.at("mobius").at("branch").get<std::string>();
    r.disconnected = j.at("disconnected").get<bool>();
    if (!j.at("disconnection_witness").is_null()) {
        ClassificationReport::Witness w;
        w.pi = j.at("disconnection_witness").at("pi").get<std::string>();
        w.window.lo = j.at("disconnection_witness").at("window").at(0).get<int>();
        w.window.hi = j.at("disconnection_witness").at("window").at(1).get<int>();
        r.disconnection_witness = w;
    }
    r.shellable = j.at("shellable").get<bool>();
    r.two_plus_two_free = j.at("two_plus_two_free").get<bool>();
    if (!j.at("cl_verified").is_null()) r.cl_verified = j.at("cl_verified").get<bool>();
    r.rank_unimodal = j.at("rank_unimodal").get<bool>();
    r.strongly_sperner = j.at("strongly_sperner").at("verdict").get<bool>();
    r.sperner_method = j.at("strongly_sperner").at("method").get<std::string>();
    r.lattice = j.at("lattice").get<bool>();
    if (!j.at("exterior").is_null()) r.exterior = j.at("exterior").get<std::string>();
    if (!j.at("interior").is_null()) r.interior = j.at("interior").get<std::string>();
    if (!j.at("has_carrier").is_null()) r.has_carrier = j.at("has_carrier").get<bool>();
    r.cap_exceeded = j.at("cap_exceeded").get<std::vector<std::string>>();
    return r;
}

std::string report_to_text(const ClassificationReport& r) {
    std::string out;
    auto line = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    auto opt_bool = [](const std::optional<bool>& b) {
        return b ? (*b ? std::string("true") : std::string("false")) : std::string("-");
    };
    line("interval", "[" + r.sigma + ", " + r.tau + "]");
    std::string sizes;
    for (std::size_t i = 0; i < r.rank_sizes.size(); ++i) {
        if (i) sizes += ",";
        sizes += std::to_string(r.rank_sizes[i]);
    }
    line("rank_sizes", sizes);
    line("breaking_rank", std::to_string(r.breaking_rank));
    line("chain", r.chain ? "true" : "false");
    line("mobius", std::to_string(r.mobius_value) + " (" + r.mobius_branch + ")");
    line("disconnected", r.disconnected ? "true" : "false");
    if (r.disconnection_witness)
        line("disconnection_witness",
             "[" + r.disconnection_witness->pi + "] in window [" +
                 std::to_string(r.disconnection_witness->window.lo) + "," +
                 std::to_string(r.disconnection_witness->window.hi) + "]");
    line("shellable", r.shellable ? "true" : "false");
    line("two_plus_two_free", r.two_plus_two_free ? "true" : "false");
    line("cl_verified", opt_bool(r.cl_verified));
    line("rank_unimodal", r.rank_unimodal ? "true" : "false");
    line("strongly_sperner",
         std::string(r.strongly_sperner ? "true" : "false") + " (" + r.sperner_method + ")");
    line("lattice", r.lattice ? "true" : "false");
    line("exterior", r.exterior.value_or("-"));
    line("interior", r.interior.value_or("-"));
    line("has_carrier", opt_bool(r.has_carrier));
    return out;
}

}  // namespace consec
