// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with stated runtime budgets are timed individually.

#include "sldyn/corresp.hpp"
#include "sldyn/morse.hpp"
#include "sldyn/repro.hpp"
#include "sldyn/serialize.hpp"
#include "sldyn/stg.hpp"

#include "support/generators.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace sldyn;
using json = nlohmann::ordered_json;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& note = "") {
    std::printf("%s  %d %-42s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                seconds, note.empty() ? "" : " -- ", note.c_str());
    if (!pass)
        ++g_failures;
}

json repro_json(const std::string& fixture, bool& pass) {
    ReproResult r = run_repro(fixture);
    pass = r.pass;
    return json::parse(r.json);
}

bool claim_passes(const json& report, const std::string& claim) {
    for (const auto& c : report.at("claims"))
        if (c.at("name") == claim)
            return c.at("pass").get<bool>();
    return false;
}

const json* claim_detail(const json& report, const std::string& claim) {
    for (const auto& c : report.at("claims"))
        if (c.at("name") == claim && c.contains("detail"))
            return &c.at("detail");
    return nullptr;
}

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
    std::string cmd = std::string(SLDYN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return "";
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    if (exit_code)
        *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------

void criterion_1_toggle_structure() {
    Timer t;
    bool pass = true;
    std::string note;

    bool repro_pass = false;
    json rep = repro_json("TOGGLE", repro_pass);
    for (const char* claim : {"stg-s-exact", "stg-l-structure", "morse-s-two-incomparable-fps",
                              "morse-l-fc-over-fps", "morse-map-omits-fc"})
        if (!claim_passes(rep, claim)) {
            pass = false;
            note = std::string("claim failed: ") + claim;
        }
    const json* detail = claim_detail(rep, "stg-s-exact");
    pass = pass && detail && detail->at("states") == 4 && detail->at("edges") == 6;

    double secs = t.seconds();
    if (secs >= 1.0) {
        pass = false;
        note = "over budget";
    }
    report(1, "toggle-exact-structure", pass, secs, note);
}

void criterion_2_oracle_equivalence(const std::vector<testsupport::RandomInstance>& instances) {
    Timer t;
    bool pass = true;
    std::string note;
    int mismatches = 0;

    for (const std::string& name : fixture_names()) {
        ExampleSpec spec = builtin_example(name);
        Network net = spec.network();
        if (!(build_stg_s(net, spec.sparams) ==
              async_update_oracle(net, discrete_map_s(net, spec.sparams))))
            ++mismatches;
    }
    for (const auto& inst : instances)
        if (!(build_stg_s(inst.net, inst.params) ==
              async_update_oracle(inst.net, discrete_map_s(inst.net, inst.params))))
            ++mismatches;

    if (mismatches > 0) {
        pass = false;
        note = std::to_string(mismatches) + " mismatches";
    }
    double secs = t.seconds();
    if (secs >= 30.0) {
        pass = false;
        note = "over budget";
    }
    report(2, "oracle-equivalence (6 fixtures + 200 random)", pass, secs, note);
}

void criterion_3_path_properties(const std::vector<CorrespondenceReport>& reports) {
    Timer t;
    int failures = 0;
    std::string note;
    for (const CorrespondenceReport& rep : reports)
        for (const CheckResult& c : rep.checks)
            if ((c.name == "edge-lift-biconditional" || c.name == "path-lift" ||
                 c.name == "bridge-descent") &&
                !c.pass) {
                ++failures;
                note = c.name + ": " + c.witness;
            }
    report(3, "edge/path/descent properties", failures == 0, t.seconds(), note);
}

void criterion_4_correspondence_suite(const std::vector<CorrespondenceReport>& reports) {
    Timer t;
    int failures = 0;
    std::string note;
    for (const CorrespondenceReport& rep : reports)
        for (const CheckResult& c : rep.checks)
            if ((c.name == "morse-map-order-preserving" || c.name == "attractor-map-surjective" ||
                 c.name == "fixed-point-bijection") &&
                !c.pass) {
                ++failures;
                note = c.name + ": " + c.witness;
                if (c.witness.find("attractors") != std::string::npos)
                    std::printf("      open-question witness: %s\n", c.witness.c_str());
            }
    report(4, "order/attractor/fixed-point correspondence", failures == 0, t.seconds(), note);
}

void criterion_5_path3d() {
    Timer t;
    bool pass = true;
    std::string note;

    bool repro_pass = false;
    json rep = repro_json("PATH3D", repro_pass);
    if (!claim_passes(rep, "escape-pair-exists") ||
        !claim_passes(rep, "printed-variant-no-nonfp-escape-pair")) {
        pass = false;
        note = "claims failed";
    }
    const json* escape = claim_detail(rep, "escape-pair-exists");
    pass = pass && escape && escape->at("distinguished_pair_found").get<bool>() &&
           escape->at("count").get<int>() >= 1;
    const json* printed = claim_detail(rep, "printed-variant-no-nonfp-escape-pair");
    pass = pass && printed && printed->at("escape_pairs_over_non_fixed_points").get<int>() == 0 &&
           printed->contains("discrepancy");

    double secs = t.seconds();
    if (secs >= 1.0) {
        pass = false;
        note = "over budget";
    }
    report(5, "path3d escape pair + printed variant", pass, secs, note);
}

void criterion_6_attr4d() {
    Timer t;
    bool pass = true;
    std::string note;

    bool repro_pass = false;
    json rep = repro_json("ATTR4D", repro_pass);
    if (!claim_passes(rep, "state-counts") || !claim_passes(rep, "escape-from-attractor")) {
        pass = false;
        note = "claims failed";
    }
    const json* counts = claim_detail(rep, "state-counts");
    pass = pass && counts && counts->at("s_states") == 36 && counts->at("l_states") == 225;

    double secs = t.seconds();
    if (secs >= 2.0) {
        pass = false;
        note = "over budget";
    }
    report(6, "attr4d escape from attractor", pass, secs, note);
}

void criterion_7_merge5d() {
    Timer t;
    bool pass = true;
    std::string note;

    bool repro_pass = false;
    json rep = repro_json("MERGE5D", repro_pass);
    if (!repro_pass) {
        pass = false;
        note = "repro failed";
    }
    const json* counts = claim_detail(rep, "state-counts");
    pass = pass && counts && counts->at("s_states") == 384 && counts->at("l_states") == 5145;
    pass = pass && claim_passes(rep, "cyclic-sets-merge") &&
           claim_passes(rep, "morse-map-not-injective");

    double secs = t.seconds();
    if (secs >= 30.0) {
        pass = false;
        note = "over budget";
    }
    report(7, "merge5d morse sets merge", pass, secs, note);
}

void criterion_8_collapse5d() {
    Timer t;
    bool pass = true;
    std::string note;

    bool repro_pass = false;
    json rep = repro_json("COLLAPSE5D", repro_pass);
    if (!repro_pass) {
        pass = false;
        note = "repro failed";
    }
    pass = pass && claim_passes(rep, "s-attractors-cycle-and-fixed-point") &&
           claim_passes(rep, "l-unique-attractor") &&
           claim_passes(rep, "attractor-map-collapses");

    double secs = t.seconds();
    if (secs >= 30.0) {
        pass = false;
        note = "over budget";
    }
    report(8, "collapse5d attractor collapse", pass, secs, note);
}

void criterion_9_determinism() {
    Timer t;
    bool pass = true;
    std::string note;

    const std::string fx = std::string(SLDYN_SOURCE_DIR) + "/fixtures/";
    const std::string gold = std::string(SLDYN_SOURCE_DIR) + "/tests/golden/";
    struct Cmd {
        const char* golden;
        std::string args;
    };
    const Cmd cmds[] = {
        {"toggle_stg_s.dot", "stg --model s --format dot " + fx + "toggle.rn " + fx + "toggle-s.json"},
        {"toggle_stg_l.dot", "stg --model l --format dot " + fx + "toggle.rn " + fx + "toggle-l.json"},
        {"toggle_stg_l.json", "stg --model l --format json " + fx + "toggle.rn " + fx + "toggle-l.json"},
        {"toggle_morse_l.dot", "morse --model l --format dot " + fx + "toggle.rn " + fx + "toggle-l.json"},
        {"toggle_morse_s.json", "morse --model s --format json " + fx + "toggle.rn " + fx + "toggle-s.json"},
        {"toggle_signature.json", "signature " + fx + "toggle.rn " + fx + "toggle-s.json"},
        {"toggle_lift.json", "lift " + fx + "toggle.rn " + fx + "toggle-s.json"},
        {"self_stg_s.json", "stg --model s --format json " + fx + "self.rn " + fx + "self-s.json"},
        {"self_stg_l.dot", "stg --model l --format dot " + fx + "self.rn " + fx + "self-l.json"},
        {"self_morse_s.dot", "morse --model s --format dot " + fx + "self.rn " + fx + "self-s.json"},
    };
    for (const Cmd& c : cmds) {
        std::string expected = slurp(gold + c.golden);
        if (expected.empty()) {
            pass = false;
            note = std::string("missing golden ") + c.golden;
            break;
        }
        for (int run = 0; run < 3 && pass; ++run) {
            int code = -1;
            std::string out = run_cli(c.args, &code);
            if (code != 0 || out != expected) {
                pass = false;
                note = std::string("mismatch on ") + c.golden;
            }
        }
        for (int threads : {2, 4}) {
            std::string out = run_cli("--threads " + std::to_string(threads) + " " + c.args);
            if (out != expected) {
                pass = false;
                note = std::string("thread-count mismatch on ") + c.golden;
            }
        }
        if (!pass)
            break;
    }

    // the remaining commands, pinned to their own first run
    const std::string others[] = {
        "validate " + fx + "toggle.rn " + fx + "toggle-s.json",
        "verify " + fx + "toggle.rn " + fx + "toggle-s.json",
        "repro TOGGLE",
        "path --model s --from 0,0 --to 1,0 " + fx + "toggle.rn " + fx + "toggle-s.json",
    };
    for (const std::string& args : others) {
        if (!pass)
            break;
        std::string first = run_cli(args);
        for (int run = 0; run < 2; ++run)
            if (run_cli(args) != first) {
                pass = false;
                note = "rerun mismatch on: " + args;
            }
        if (run_cli("--threads 4 " + args) != first) {
            pass = false;
            note = "thread-count mismatch on: " + args;
        }
    }
    report(9, "byte-identical cli output", pass, t.seconds(), note);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    Timer total;

    criterion_1_toggle_structure();

    std::mt19937 rng(20240); // the shared instance set for criteria 2-4
    std::vector<testsupport::RandomInstance> instances;
    instances.reserve(200);
    for (int i = 0; i < 200; ++i)
        instances.push_back(testsupport::random_instance(rng));

    criterion_2_oracle_equivalence(instances);

    // One verification battery per fixture and instance feeds criteria 3-4.
    std::vector<CorrespondenceReport> reports;
    for (const std::string& name : fixture_names()) {
        ExampleSpec spec = builtin_example(name);
        reports.push_back(verify_correspondence(spec.network(), spec.sparams));
    }
    for (const auto& inst : instances)
        reports.push_back(verify_correspondence(inst.net, inst.params));

    criterion_3_path_properties(reports);
    criterion_4_correspondence_suite(reports);
    criterion_5_path3d();
    criterion_6_attr4d();
    criterion_7_merge5d();
    criterion_8_collapse5d();
    criterion_9_determinism();

    std::printf("%d criterion(s) failed; total %.2fs\n", g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
