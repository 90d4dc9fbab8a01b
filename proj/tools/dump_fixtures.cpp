// Writes the built-in example networks and parameter files into a directory
// (default: fixtures/) so the CLI can replay them.

#include "sldyn/params.hpp"
#include "sldyn/repro.hpp"
#include "sldyn/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

using namespace sldyn;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << content;
    std::cout << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    for (const std::string& name : fixture_names()) {
        ExampleSpec spec = builtin_example(name);
        Network net = spec.network();
        std::string base = name;
        std::transform(base.begin(), base.end(), base.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        write_file(dir + "/" + base + ".rn", spec.network_text + "\n");
        write_file(dir + "/" + base + "-s.json", raw_params_to_json(to_raw(net, spec.sparams)));
        if (spec.lparams)
            write_file(dir + "/" + base + "-l.json",
                       raw_params_to_json(to_raw(net, *spec.lparams)));
        if (spec.alt_sparams)
            write_file(dir + "/" + base + "-printed-s.json",
                       raw_params_to_json(to_raw(net, *spec.alt_sparams)));
    }
    return 0;
}
