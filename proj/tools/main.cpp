// Command-line front end. Talks to the engine exclusively through the C API;
// machine-readable payloads go to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 a check or validation failed, 2 malformed input.

#include "sldyn/capi.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

[[noreturn]] void die(const std::string& message) {
    std::string line = message;
    for (char& c : line)
        if (c == '\n')
            c = ' ';
    std::cerr << "error: " << line << "\n";
    std::exit(kExitInputError);
}

[[noreturn]] void die_api() { die(sldyn_last_error()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        die("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct NetworkHandle {
    sldyn_network* ptr = nullptr;
    ~NetworkHandle() { sldyn_network_free(ptr); }
};
struct ParamsHandle {
    sldyn_params* ptr = nullptr;
    ~ParamsHandle() { sldyn_params_free(ptr); }
};
struct GraphHandle {
    sldyn_graph* ptr = nullptr;
    ~GraphHandle() { sldyn_graph_free(ptr); }
};

struct ApiString {
    char* ptr = nullptr;
    ~ApiString() { sldyn_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

void load_network(const std::string& path, NetworkHandle& net) {
    std::string text = read_file(path);
    if (sldyn_network_parse(text.c_str(), &net.ptr) != SLDYN_OK)
        die_api();
}

void load_params(const NetworkHandle& net, const std::string& path, ParamsHandle& params) {
    std::string text = read_file(path);
    if (sldyn_params_parse(net.ptr, text.c_str(), &params.ptr) != SLDYN_OK)
        die_api();
}

int expect_model(const std::string& flag) {
    if (flag == "s")
        return SLDYN_MODEL_S;
    if (flag == "l")
        return SLDYN_MODEL_L;
    die("--model must be 's' or 'l'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state transition graphs and Morse graphs of switching and bridge systems"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for graph construction")
        ->check(CLI::PositiveNumber);

    std::string net_path, params_path, model_flag = "s", format = "dot";
    std::string from_state, to_state, fixture;

    auto* validate = app.add_subcommand("validate", "check a parameter file against a network");
    validate->add_option("network", net_path)->required();
    validate->add_option("params", params_path)->required();

    auto* signature = app.add_subcommand("signature", "threshold orders and target table");
    signature->add_option("network", net_path)->required();
    signature->add_option("params", params_path)->required();

    auto* stg = app.add_subcommand("stg", "build a state transition graph");
    stg->add_option("--model", model_flag, "s or l")->required();
    stg->add_option("--format", format, "dot or json");
    stg->add_option("network", net_path)->required();
    stg->add_option("params", params_path)->required();

    auto* morse = app.add_subcommand("morse", "Morse graph of a state transition graph");
    morse->add_option("--model", model_flag, "s or l")->required();
    morse->add_option("--format", format, "dot or json");
    morse->add_option("network", net_path)->required();
    morse->add_option("params", params_path)->required();

    auto* lift = app.add_subcommand("lift", "canonical bridge parameter of a switching parameter");
    lift->add_option("network", net_path)->required();
    lift->add_option("params", params_path)->required();

    auto* verify = app.add_subcommand("verify", "run the correspondence checks");
    verify->add_option("network", net_path)->required();
    verify->add_option("params", params_path)->required();

    auto* repro = app.add_subcommand("repro", "run a built-in example's claim checks");
    repro->add_option("fixture", fixture, "SELF, TOGGLE, PATH3D, ATTR4D, MERGE5D, COLLAPSE5D")
        ->required();

    auto* path = app.add_subcommand("path", "directed path query between two states");
    path->add_option("--model", model_flag, "s or l")->required();
    path->add_option("--from", from_state, "comma-separated levels")->required();
    path->add_option("--to", to_state, "comma-separated levels")->required();
    path->add_option("network", net_path)->required();
    path->add_option("params", params_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        std::ostringstream buf;
        buf << e.get_name() << ": " << e.what();
        die(buf.str());
    }

    if (validate->parsed()) {
        NetworkHandle net;
        load_network(net_path, net);
        ApiString report;
        int violations = 0;
        if (sldyn_validate(net.ptr, read_file(params_path).c_str(), &report.ptr, &violations) !=
            SLDYN_OK)
            die_api();
        std::cout << report.str();
        return violations == 0 ? kExitOk : kExitCheckFailed;
    }

    if (signature->parsed()) {
        NetworkHandle net;
        ParamsHandle params;
        load_network(net_path, net);
        load_params(net, params_path, params);
        ApiString out;
        if (sldyn_signature(net.ptr, params.ptr, &out.ptr) != SLDYN_OK)
            die_api();
        std::cout << out.str();
        return kExitOk;
    }

    if (stg->parsed() || morse->parsed()) {
        if (format != "dot" && format != "json")
            die("--format must be 'dot' or 'json'");
        NetworkHandle net;
        ParamsHandle params;
        load_network(net_path, net);
        load_params(net, params_path, params);
        if (sldyn_params_model(params.ptr) != expect_model(model_flag))
            die("--model does not match the parameter file");
        GraphHandle graph;
        if (sldyn_stg_build(net.ptr, params.ptr, threads, &graph.ptr) != SLDYN_OK)
            die_api();
        ApiString out;
        int rc;
        if (stg->parsed())
            rc = format == "dot" ? sldyn_graph_dot(graph.ptr, &out.ptr)
                                 : sldyn_graph_json(graph.ptr, net.ptr, &out.ptr);
        else
            rc = format == "dot" ? sldyn_morse_dot(graph.ptr, net.ptr, &out.ptr)
                                 : sldyn_morse_json(graph.ptr, net.ptr, &out.ptr);
        if (rc != SLDYN_OK)
            die_api();
        std::cout << out.str();
        return kExitOk;
    }

    if (lift->parsed()) {
        NetworkHandle net;
        ParamsHandle params;
        load_network(net_path, net);
        load_params(net, params_path, params);
        ApiString out;
        if (sldyn_lift(net.ptr, params.ptr, &out.ptr) != SLDYN_OK)
            die_api();
        std::cout << out.str();
        return kExitOk;
    }

    if (verify->parsed()) {
        NetworkHandle net;
        ParamsHandle params;
        load_network(net_path, net);
        load_params(net, params_path, params);
        ApiString report;
        int passed = 0;
        if (sldyn_verify(net.ptr, params.ptr, threads, &report.ptr, &passed) != SLDYN_OK)
            die_api();
        std::cout << report.str();
        return passed ? kExitOk : kExitCheckFailed;
    }

    if (repro->parsed()) {
        ApiString report;
        int passed = 0;
        if (sldyn_repro(fixture.c_str(), threads, &report.ptr, &passed) != SLDYN_OK)
            die_api();
        std::cout << report.str();
        return passed ? kExitOk : kExitCheckFailed;
    }

    if (path->parsed()) {
        NetworkHandle net;
        ParamsHandle params;
        load_network(net_path, net);
        load_params(net, params_path, params);
        if (sldyn_params_model(params.ptr) != expect_model(model_flag))
            die("--model does not match the parameter file");
        GraphHandle graph;
        if (sldyn_stg_build(net.ptr, params.ptr, threads, &graph.ptr) != SLDYN_OK)
            die_api();
        ApiString out;
        int exists = 0;
        if (sldyn_path_query(graph.ptr, from_state.c_str(), to_state.c_str(), &out.ptr,
                             &exists) != SLDYN_OK)
            die_api();
        std::cout << out.str();
        return kExitOk;
    }

    return kExitInputError;
}
