#include "sldyn/capi.h"

#include "sldyn/corresp.hpp"
#include "sldyn/errors.hpp"
#include "sldyn/morse.hpp"
#include "sldyn/network.hpp"
#include "sldyn/params.hpp"
#include "sldyn/repro.hpp"
#include "sldyn/serialize.hpp"
#include "sldyn/stg.hpp"

#include <cstring>
#include <memory>
#include <sstream>
#include <string>
#include <variant>

using namespace sldyn;

struct sldyn_network {
    Network net;
};

struct sldyn_params {
    std::variant<SParams, LParams> values;
    Model model() const { return values.index() == 0 ? Model::S : Model::L; }
};

struct sldyn_graph {
    TransitionGraph graph;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs fn, mapping exceptions to status codes and the thread-local message.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::ostringstream msg;
        msg << parse_error_kind_name(e.kind);
        if (e.line > 0)
            msg << " at " << e.line << ":" << e.column;
        msg << ": " << e.what();
        set_error(msg.str());
        return SLDYN_EINVAL;
    } catch (const EngineError& e) {
        set_error(std::string(engine_error_code_name(e.code)) + ": " + e.what());
        return SLDYN_EINVAL;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SLDYN_EINVAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SLDYN_EINTERNAL;
    }
}

int require(bool ok) {
    if (!ok) {
        set_error("null argument");
        return SLDYN_EINVAL;
    }
    return SLDYN_OK;
}

std::vector<int> parse_levels(const char* text) {
    std::vector<int> out;
    std::string s(text);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (part.empty() || part.size() > 8 ||
            part.find_first_not_of("0123456789") != std::string::npos)
            throw EngineError(EngineError::Code::BadInput,
                              "malformed state '" + s + "' (expected comma-separated levels)");
        out.push_back(std::stoi(part));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

template <typename Params>
void require_valid(const Network& net, const Params& p,
                   std::vector<Violation> (*validate)(const Network&, const Params&)) {
    auto violations = validate(net, p);
    if (!violations.empty())
        throw EngineError(EngineError::Code::BadInput,
                          "invalid parameter: " + violations.front().code + " at " +
                              violations.front().where);
}

}  // namespace

extern "C" {

const char* sldyn_last_error(void) { return g_last_error.c_str(); }

void sldyn_string_free(char* s) { delete[] s; }

int sldyn_network_parse(const char* text, sldyn_network** out) {
    if (int rc = require(text && out))
        return rc;
    return guarded([&] {
        *out = new sldyn_network{parse_network(text)};
        return SLDYN_OK;
    });
}

int sldyn_network_format(const sldyn_network* net, char** out) {
    if (int rc = require(net && out))
        return rc;
    return guarded([&] {
        *out = dup_string(print_network(net->net) + "\n");
        return SLDYN_OK;
    });
}

void sldyn_network_free(sldyn_network* net) { delete net; }

int sldyn_params_parse(const sldyn_network* net, const char* json, sldyn_params** out) {
    if (int rc = require(net && json && out))
        return rc;
    return guarded([&] {
        RawParams raw = raw_params_from_json(json);
        auto handle = std::make_unique<sldyn_params>();
        if (raw_params_look_l(raw))
            handle->values = bind_l(net->net, raw);
        else
            handle->values = bind_s(net->net, raw);
        *out = handle.release();
        return SLDYN_OK;
    });
}

int sldyn_params_model(const sldyn_params* params) {
    if (!params)
        return -1;
    return params->model() == Model::S ? SLDYN_MODEL_S : SLDYN_MODEL_L;
}

void sldyn_params_free(sldyn_params* params) { delete params; }

int sldyn_validate(const sldyn_network* net, const char* params_json, char** report_json,
                   int* violation_count) {
    if (int rc = require(net && params_json && report_json && violation_count))
        return rc;
    return guarded([&] {
        RawParams raw = raw_params_from_json(params_json);
        std::vector<Violation> violations = raw_params_look_l(raw)
                                                ? validate_l(net->net, raw)
                                                : validate_s(net->net, raw);
        *report_json = dup_string(violations_to_json(violations));
        *violation_count = static_cast<int>(violations.size());
        return SLDYN_OK;
    });
}

int sldyn_signature(const sldyn_network* net, const sldyn_params* params, char** json) {
    if (int rc = require(net && params && json))
        return rc;
    return guarded([&] {
        std::string out;
        if (params->model() == Model::S) {
            const SParams& p = std::get<SParams>(params->values);
            require_valid(net->net, p, validate_s);
            out = signature_to_json(net->net, Model::S, threshold_order(net->net, p),
                                    discrete_map_s(net->net, p));
        } else {
            const LParams& p = std::get<LParams>(params->values);
            require_valid(net->net, p, validate_l);
            out = signature_to_json(net->net, Model::L, threshold_order(net->net, p),
                                    discrete_map_ln(net->net, p));
        }
        *json = dup_string(out);
        return SLDYN_OK;
    });
}

int sldyn_lift(const sldyn_network* net, const sldyn_params* sparams, char** lparams_json) {
    if (int rc = require(net && sparams && lparams_json))
        return rc;
    return guarded([&] {
        if (sparams->model() != Model::S)
            throw EngineError(EngineError::Code::BadInput,
                              "lift expects a switching parameter file");
        const SParams& p = std::get<SParams>(sparams->values);
        require_valid(net->net, p, validate_s);
        LParams lifted = canonical_lift(net->net, p);
        *lparams_json = dup_string(raw_params_to_json(to_raw(net->net, lifted)));
        return SLDYN_OK;
    });
}

int sldyn_stg_build(const sldyn_network* net, const sldyn_params* params, int threads,
                    sldyn_graph** out) {
    if (int rc = require(net && params && out))
        return rc;
    return guarded([&] {
        TransitionGraph g;
        if (params->model() == Model::S) {
            const SParams& p = std::get<SParams>(params->values);
            require_valid(net->net, p, validate_s);
            g = build_stg_s(net->net, p, threads);
        } else {
            const LParams& p = std::get<LParams>(params->values);
            require_valid(net->net, p, validate_l);
            g = build_stg_l(net->net, p, threads);
        }
        *out = new sldyn_graph{std::move(g)};
        return SLDYN_OK;
    });
}

int sldyn_graph_model(const sldyn_graph* graph) {
    if (!graph)
        return -1;
    return graph->graph.model == Model::S ? SLDYN_MODEL_S : SLDYN_MODEL_L;
}

int sldyn_graph_dot(const sldyn_graph* graph, char** out) {
    if (int rc = require(graph && out))
        return rc;
    return guarded([&] {
        *out = dup_string(stg_to_dot(graph->graph));
        return SLDYN_OK;
    });
}

int sldyn_graph_json(const sldyn_graph* graph, const sldyn_network* net, char** out) {
    if (int rc = require(graph && net && out))
        return rc;
    return guarded([&] {
        *out = dup_string(stg_to_json(graph->graph, net->net));
        return SLDYN_OK;
    });
}

void sldyn_graph_free(sldyn_graph* graph) { delete graph; }

int sldyn_morse_dot(const sldyn_graph* graph, const sldyn_network* net, char** out) {
    if (int rc = require(graph && net && out))
        return rc;
    return guarded([&] {
        *out = dup_string(morse_to_dot(morse_graph(graph->graph), net->net));
        return SLDYN_OK;
    });
}

int sldyn_morse_json(const sldyn_graph* graph, const sldyn_network* net, char** out) {
    if (int rc = require(graph && net && out))
        return rc;
    return guarded([&] {
        *out = dup_string(
            morse_to_json(morse_graph(graph->graph), net->net, graph->graph.model));
        return SLDYN_OK;
    });
}

int sldyn_path_query(const sldyn_graph* graph, const char* from, const char* to, char** json,
                     int* exists) {
    if (int rc = require(graph && from && to && json && exists))
        return rc;
    return guarded([&] {
        std::vector<int> a = parse_levels(from);
        std::vector<int> b = parse_levels(to);
        const TransitionGraph& g = graph->graph;
        if (!g.space.contains(a) || !g.space.contains(b))
            throw EngineError(EngineError::Code::BadInput,
                              "state outside the graph's state space");
        auto path = witness_path(g, a, b);
        bool found = has_path(g, a, b);
        *json = dup_string(path_result_to_json(found, path));
        *exists = found ? 1 : 0;
        return SLDYN_OK;
    });
}

int sldyn_verify(const sldyn_network* net, const sldyn_params* sparams, int threads,
                 char** report_json, int* passed) {
    if (int rc = require(net && sparams && report_json && passed))
        return rc;
    return guarded([&] {
        if (sparams->model() != Model::S)
            throw EngineError(EngineError::Code::BadInput,
                              "verify expects a switching parameter file");
        const SParams& p = std::get<SParams>(sparams->values);
        require_valid(net->net, p, validate_s);
        CorrespondenceReport report = verify_correspondence(net->net, p, threads);
        *report_json = dup_string(report_to_json(report));
        *passed = report.pass ? 1 : 0;
        return SLDYN_OK;
    });
}

int sldyn_repro(const char* fixture, int threads, char** report_json, int* passed) {
    if (int rc = require(fixture && report_json && passed))
        return rc;
    return guarded([&] {
        ReproResult result = run_repro(fixture, threads);
        *report_json = dup_string(result.json);
        *passed = result.pass ? 1 : 0;
        return SLDYN_OK;
    });
}

int sldyn_fixture_network(const char* fixture, char** rn_text) {
    if (int rc = require(fixture && rn_text))
        return rc;
    return guarded([&] {
        *rn_text = dup_string(builtin_example(fixture).network_text + "\n");
        return SLDYN_OK;
    });
}

int sldyn_fixture_params(const char* fixture, const char* which, char** params_json) {
    if (int rc = require(fixture && which && params_json))
        return rc;
    return guarded([&] {
        ExampleSpec spec = builtin_example(fixture);
        Network net = spec.network();
        std::string kind(which);
        if (kind == "s") {
            *params_json = dup_string(raw_params_to_json(to_raw(net, spec.sparams)));
        } else if (kind == "l" && spec.lparams) {
            *params_json = dup_string(raw_params_to_json(to_raw(net, *spec.lparams)));
        } else if (kind == "alt-s" && spec.alt_sparams) {
            *params_json = dup_string(raw_params_to_json(to_raw(net, *spec.alt_sparams)));
        } else {
            throw EngineError(EngineError::Code::UnknownFixture,
                              "fixture '" + spec.name + "' has no '" + kind + "' parameters");
        }
        return SLDYN_OK;
    });
}

}  // extern "C"
