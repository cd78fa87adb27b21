#include "consec/export.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "consec/topology.hpp"

namespace consec {

std::string to_dot(const Interval& I, bool compact) {
    std::string out = "digraph interval {\n";
    for (int e = 0; e < I.size(); ++e)
        out += "  n" + std::to_string(e) + " [label=\"" + to_string(I.value(e), compact) + "\"];\n";
    for (int e = 0; e < I.size(); ++e)
        for (int c : I.covers(e))
            out += "  n" + std::to_string(e) + " -> n" + std::to_string(c) + ";\n";
    out += "}\n";
    return out;
}

std::string to_dot_labeled(const Interval& I, std::int64_t max_chains, bool compact) {
    std::map<std::pair<int, int>, std::set<std::pair<int, int>>> edge_labels;
    for (const auto& chain : maximal_chains(I, max_chains)) {
        const auto labeled = cl_labels(I, chain);
        for (std::size_t i = 0; i + 1 < chain.elems.size(); ++i)
            edge_labels[{chain.elems[i], chain.elems[i + 1]}].insert(
                {labeled.labels[i].base, labeled.labels[i].eps_mult});
    }
    std::string out = "digraph interval {\n";
    for (int e = 0; e < I.size(); ++e)
        out += "  n" + std::to_string(e) + " [label=\"" + to_string(I.value(e), compact) + "\"];\n";
    for (int e = 0; e < I.size(); ++e)
        for (int c : I.covers(e)) {
            std::string label;
            for (const auto& [base, eps] : edge_labels[{e, c}]) {
                if (!label.empty()) label += "|";
                label += ChainLabel{base, eps}.to_string();
            }
            out += "  n" + std::to_string(e) + " -> n" + std::to_string(c) + " [label=\"" +
                   label + "\"];\n";
        }
    out += "}\n";
    return out;
}

std::string interval_to_json(const Interval& I, bool compact) {
    nlohmann::ordered_json j;
    j["sigma"] = to_string(I.sigma(), compact);
    j["tau"] = to_string(I.tau(), compact);
    auto ranks = nlohmann::ordered_json::array();
    for (int r = 0; r <= I.rank_count(); ++r) {
        auto level = nlohmann::ordered_json::array();
        for (int e : I.elements_of_rank(r)) level.push_back(to_string(I.value(e), compact));
        ranks.push_back(level);
    }
    j["ranks"] = ranks;
    auto covers = nlohmann::ordered_json::array();
    for (int e = 0; e < I.size(); ++e)
        for (int c : I.covers(e))
            covers.push_back(nlohmann::ordered_json::array({to_string(I.value(c), compact),
                                                            to_string(I.value(e), compact)}));
    j["covers"] = covers;
    return j.dump(2);
}

}  // namespace consec
