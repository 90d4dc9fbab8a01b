#include "sldyn/serialize.hpp"

#include "sldyn/errors.hpp"

#include <json.hpp>

namespace sldyn {

using json = nlohmann::ordered_json;

namespace {

Rational rational_field(const json& value, const std::string& context) {
    if (value.is_number_integer())
        return Rational(static_cast<long long>(value.get<long long>()));
    if (value.is_string()) {
        auto r = parse_rational(value.get<std::string>());
        if (r)
            return *r;
    }
    throw EngineError(EngineError::Code::BadInput,
                      "expected a rational string at " + context);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RawParams raw_params_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw EngineError(EngineError::Code::BadInput, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("gamma") || !j.contains("edges") ||
        !j["gamma"].is_object() || !j["edges"].is_object())
        throw EngineError(EngineError::Code::BadInput,
                          "parameter file must be {\"gamma\": {...}, \"edges\": {...}}");

    RawParams raw;
    for (auto& [node, value] : j["gamma"].items())
        raw.gamma[node] = rational_field(value, "gamma." + node);
    for (auto& [key, rec] : j["edges"].items()) {
        if (!rec.is_object())
            throw EngineError(EngineError::Code::BadInput, "edge entry " + key + " must be an object");
        RawEdgeParams e;
        for (auto& [field, value] : rec.items()) {
            if (field == "l")
                e.l = rational_field(value, key + ".l");
            else if (field == "u")
                e.u = rational_field(value, key + ".u");
            else if (field == "theta")
                e.theta = rational_field(value, key + ".theta");
            else if (field == "theta_minus")
                e.theta_minus = rational_field(value, key + ".theta_minus");
            else if (field == "theta_plus")
                e.theta_plus = rational_field(value, key + ".theta_plus");
            else
                throw EngineError(EngineError::Code::BadInput,
                                  "unknown field '" + field + "' in edge entry " + key);
        }
        raw.edges[key] = e;
    }
    return raw;
}

std::string raw_params_to_json(const RawParams& raw) {
    json j;
    j["gamma"] = json::object();
    for (const auto& [node, value] : raw.gamma)
        j["gamma"][node] = to_string(value);
    j["edges"] = json::object();
    for (const auto& [key, e] : raw.edges) {
        json rec = json::object();
        if (e.l)
            rec["l"] = to_string(*e.l);
        if (e.u)
            rec["u"] = to_string(*e.u);
        if (e.theta)
            rec["theta"] = to_string(*e.theta);
        if (e.theta_minus)
            rec["theta_minus"] = to_string(*e.theta_minus);
        if (e.theta_plus)
            rec["theta_plus"] = to_string(*e.theta_plus);
        j["edges"][key] = rec;
    }
    return dump(j);
}

std::string violations_to_json(const std::vector<Violation>& violations) {
    json j;
    j["schema"] = "violations/1";
    j["count"] = violations.size();
    j["violations"] = json::array();
    for (const Violation& v : violations) {
        json rec;
        rec["code"] = v.code;
        rec["structural"] = violation_is_structural(v);
        rec["where"] = v.where;
        rec["detail"] = v.detail;
        j["violations"].push_back(rec);
    }
    return dump(j);
}

std::string signature_to_json(const Network& net, Model model,
                              const std::vector<std::vector<int>>& orders,
                              const std::vector<int>& targets) {
    json j;
    j["schema"] = "signature/1";
    j["model"] = model_name(model);
    j["orders"] = json::object();
    for (int i = 0; i < net.node_count(); ++i) {
        json names = json::array();
        for (int t : orders[i])
            names.push_back(net.name(t));
        j["orders"][net.name(i)] = names;
    }

    StateSpace domain_space = StateSpace::for_model(net, Model::S);
    StateSpace value_space = StateSpace::for_model(net, model);
    j["targets"] = json::array();
    for (int r = 0; r < static_cast<int>(targets.size()); ++r) {
        std::vector<int> from = domain_space.unrank(r);
        if (model == Model::L)
            for (int& v : from)
                v *= 2;
        json rec;
        rec["from"] = from;
        rec["to"] = value_space.unrank(targets[r]);
        j["targets"].push_back(rec);
    }
    return dump(j);
}

namespace {

std::string state_node_name(const TransitionGraph& g, int rank) {
    std::string s = model_name(g.model);
    for (int v : g.space.unrank(rank))
        s += "_" + std::to_string(v);
    return s;
}

}  // namespace

std::string stg_to_dot(const TransitionGraph& g) {
    std::string out = "digraph stg {\n";
    for (int r = 0; r < g.state_count(); ++r)
        out += "  " + state_node_name(g, r) + ";\n";
    for (int r = 0; r < g.state_count(); ++r)
        for (int w : g.succ[r])
            out += "  " + state_node_name(g, r) + " -> " + state_node_name(g, w) + ";\n";
    out += "}\n";
    return out;
}

std::string stg_to_json(const TransitionGraph& g, const Network& net) {
    json j;
    j["schema"] = "stg/1";
    j["model"] = model_name(g.model);
    j["nodes"] = net.names();
    j["dims"] = g.space.dims;
    j["states"] = json::array();
    for (int r = 0; r < g.state_count(); ++r)
        j["states"].push_back(g.space.unrank(r));
    j["edges"] = json::array();
    for (int r = 0; r < g.state_count(); ++r)
        for (int w : g.succ[r])
            j["edges"].push_back(json::array({r, w}));
    return dump(j);
}

std::string morse_to_dot(const MorseGraph& mg, const Network& net) {
    std::string out = "digraph morse {\n";
    for (int a = 0; a < mg.set_count(); ++a) {
        out += "  m" + std::to_string(a) + " [label=\"" + morse_label_text(mg.labels[a], net) +
               "\"";
        if (mg.attractor[a])
            out += ", peripheries=2";
        out += "];\n";
    }
    for (int a = 0; a < mg.set_count(); ++a)
        for (int b : mg.down[a])
            out += "  m" + std::to_string(a) + " -> m" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

std::string morse_to_json(const MorseGraph& mg, const Network& net, Model model) {
    json j;
    j["schema"] = "morse/1";
    j["model"] = model_name(model);
    j["nodes"] = net.names();
    j["sets"] = json::array();
    for (int a = 0; a < mg.set_count(); ++a) {
        json rec;
        rec["index"] = a;
        rec["label"] = morse_label_text(mg.labels[a], net);
        json varying = json::array();
        for (int i : mg.labels[a].varying)
            varying.push_back(net.name(i));
        rec["varying"] = varying;
        rec["attractor"] = static_cast<bool>(mg.attractor[a]);
        rec["states"] = json::array();
        for (int r : mg.sets[a].states)
            rec["states"].push_back(mg.space.unrank(r));
        j["sets"].push_back(rec);
    }
    j["edges"] = json::array();
    for (int a = 0; a < mg.set_count(); ++a)
        for (int b : mg.down[a])
            j["edges"].push_back(json::array({a, b}));
    return dump(j);
}

std::string report_to_json(const CorrespondenceReport& report) {
    json j;
    j["schema"] = "verify-report/1";
    j["s_states"] = report.s_state_count;
    j["l_states"] = report.l_state_count;
    j["checks"] = json::array();
    for (const CheckResult& c : report.checks) {
        json rec;
        rec["name"] = c.name;
        rec["pass"] = c.pass;
        if (!c.pass)
            rec["witness"] = c.witness;
        j["checks"].push_back(rec);
    }
    j["morse_map"] = report.morse_map;
    j["attractor_map"] = json::array();
    for (auto [a, b] : report.attr_map)
        j["attractor_map"].push_back(json::array({a, b}));
    json flags;
    flags["morse_map_surjective"] = report.morse_map_surjective;
    flags["morse_map_injective"] = report.morse_map_injective;
    if (!report.morse_map_injective)
        flags["morse_map_injective_witness"] = report.morse_map_injective_witness;
    flags["attractor_map_injective"] = report.attractor_map_injective;
    if (!report.attractor_map_injective)
        flags["attractor_map_injective_witness"] = report.attractor_map_injective_witness;
    j["flags"] = flags;
    j["pass"] = report.pass;
    return dump(j);
}

std::string path_result_to_json(bool exists, const std::vector<std::vector<int>>& path) {
    json j;
    j["schema"] = "path/1";
    j["exists"] = exists;
    j["path"] = json::array();
    for (const auto& state : path)
        j["path"].push_back(state);
    return dump(j);
}

}  // namespace sldyn
