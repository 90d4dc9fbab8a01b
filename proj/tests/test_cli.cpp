// Golden-file and exit-code tests for the command-line tool. The CLI binary
// path and the repository root come in as compile definitions.

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SLDYN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(SLDYN_SOURCE_DIR) + "/fixtures/" + name;
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(SLDYN_SOURCE_DIR) + "/tests/golden/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("golden outputs for the toggle and self-activator fixtures") {
    struct Case {
        const char* file;
        std::string args;
    };
    const Case cases[] = {
        {"toggle_stg_s.dot", "stg --model s --format dot " + fixture("toggle.rn") + " " +
                                 fixture("toggle-s.json")},
        {"toggle_stg_l.dot", "stg --model l --format dot " + fixture("toggle.rn") + " " +
                                 fixture("toggle-l.json")},
        {"toggle_stg_l.json", "stg --model l --format json " + fixture("toggle.rn") + " " +
                                  fixture("toggle-l.json")},
        {"toggle_morse_l.dot", "morse --model l --format dot " + fixture("toggle.rn") + " " +
                                   fixture("toggle-l.json")},
        {"toggle_morse_s.json", "morse --model s --format json " + fixture("toggle.rn") + " " +
                                    fixture("toggle-s.json")},
        {"toggle_signature.json", "signature " + fixture("toggle.rn") + " " +
                                      fixture("toggle-s.json")},
        {"toggle_lift.json", "lift " + fixture("toggle.rn") + " " + fixture("toggle-s.json")},
        {"self_stg_s.json",
         "stg --model s --format json " + fixture("self.rn") + " " + fixture("self-s.json")},
        {"self_stg_l.dot",
         "stg --model l --format dot " + fixture("self.rn") + " " + fixture("self-l.json")},
        {"self_morse_s.dot",
         "morse --model s --format dot " + fixture("self.rn") + " " + fixture("self-s.json")},
    };
    for (const Case& c : cases) {
        CAPTURE(c.file);
        RunResult r = run_cli(c.args);
        CHECK(r.exit_code == 0);
        CHECK(r.out == golden(c.file));
    }
}

TEST_CASE("the 9-state bridge graph has deterministic dot output") {
    std::string args = "stg --model l --format dot " + fixture("toggle.rn") + " " +
                       fixture("toggle-l.json");
    RunResult first = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("l_1_1") != std::string::npos);
    for (int i = 0; i < 2; ++i)
        CHECK(run_cli(args).out == first.out);
    CHECK(run_cli("--threads 4 " + args).out == first.out);
}

TEST_CASE("path query exit codes and payload") {
    std::string base = fixture("path3d.rn") + " " + fixture("path3d-s.json");
    RunResult no = run_cli("path --model s --from 0,0,1 --to 1,0,0 " + base);
    CHECK(no.exit_code == 0);
    CHECK(no.out.find("\"exists\": false") != std::string::npos);

    RunResult yes = run_cli("path --model s --from 0,0,0 --to 1,1,0 " + base);
    CHECK(yes.exit_code == 0);
    CHECK(yes.out.find("\"exists\": true") != std::string::npos);
}

TEST_CASE("validate maps violations to exit 1 and malformed input to exit 2") {
    RunResult ok = run_cli("validate " + fixture("toggle.rn") + " " + fixture("toggle-s.json"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"count\": 0") != std::string::npos);

    // stitch a mismatched file: self params against the toggle network
    RunResult bad = run_cli("validate " + fixture("toggle.rn") + " " + fixture("self-s.json"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("missing-gamma") != std::string::npos);

    RunResult missing = run_cli("validate " + fixture("toggle.rn") + " /nonexistent.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.out.empty());

    RunResult garbage = run_cli("validate " + fixture("toggle.rn") + " " + fixture("toggle.rn"));
    CHECK(garbage.exit_code == 2);
}

TEST_CASE("verify and repro succeed on the toggle") {
    RunResult v = run_cli("verify " + fixture("toggle.rn") + " " + fixture("toggle-s.json"));
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("\"pass\": true") != std::string::npos);

    RunResult r = run_cli("repro TOGGLE");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"fixture\": \"TOGGLE\"") != std::string::npos);

    RunResult unknown = run_cli("repro WHAT");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("model flag must match the parameter file") {
    RunResult r = run_cli("stg --model l --format dot " + fixture("toggle.rn") + " " +
                          fixture("toggle-s.json"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("bad flag values are input errors") {
    std::string base = fixture("toggle.rn") + " " + fixture("toggle-s.json");
    CHECK(run_cli("stg --model s --format yaml " + base).exit_code == 2);
    CHECK(run_cli("stg --model x --format dot " + base).exit_code == 2);
    CHECK(run_cli("--threads 0 stg --model s --format dot " + base).exit_code == 2);
    CHECK(run_cli("path --model s --from 0 --to 0,1 " + base).exit_code == 2);
    CHECK(run_cli("path --model s --from 9,9 --to 0,1 " + base).exit_code == 2);
}

TEST_CASE("stderr carries a single-line diagnostic on input errors") {
    std::string cmd = std::string(SLDYN_CLI_PATH) + " validate /nonexistent.rn /x.json 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string all;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        all.append(buf.data(), n);
    pclose(pipe);
    CHECK(all.rfind("error: ", 0) == 0);
    CHECK(std::count(all.begin(), all.end(), '\n') == 1);
}
