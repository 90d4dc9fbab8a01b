// Randomized search for rational parameters satisfying a fixture's
// inequality system, the provenance tool behind the shipped 4D/5D values.
// Candidates draw l, u, theta from small integers and halves; a hit must
// also pass full validation (including regularity).

#include "sldyn/params.hpp"
#include "sldyn/repro.hpp"
#include "sldyn/serialize.hpp"

#include <iostream>
#include <random>
#include <string>

using namespace sldyn;

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: sldyn-param-search <FIXTURE> [--seed N] [--tries N]\n";
        return 2;
    }
    std::string name = argv[1];
    unsigned seed = 1;
    long long tries = 200000;
    for (int i = 2; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--seed")
            seed = static_cast<unsigned>(std::stoul(argv[i + 1]));
        else if (flag == "--tries")
            tries = std::stoll(argv[i + 1]);
        else {
            std::cerr << "unknown flag " << flag << "\n";
            return 2;
        }
    }

    ExampleSpec spec = builtin_example(name);
    Network net = spec.network();
    std::mt19937 rng(seed);

    auto half = [&](int lo, int hi) {
        std::uniform_int_distribution<int> dist(2 * lo, 2 * hi);
        return Rational(dist(rng), 2);
    };

    for (long long attempt = 0; attempt < tries; ++attempt) {
        SParams candidate;
        candidate.gamma.assign(net.node_count(), Rational(1));
        candidate.edge.clear();
        for (std::size_t e = 0; e < net.edges().size(); ++e) {
            Rational l = half(1, 8);
            Rational u = l + half(1, 32);
            Rational theta = half(1, 64);
            candidate.edge.push_back(SEdgeParams{l, u, theta});
        }

        bool ok = validate_s(net, candidate).empty();
        for (const Inequality& iq : spec.inequalities)
            ok = ok && iq.holds(net, candidate);
        if (!ok)
            continue;

        std::cerr << "found after " << (attempt + 1) << " tries\n";
        std::cout << raw_params_to_json(to_raw(net, candidate));
        return 0;
    }
    std::cerr << "no solution in " << tries << " tries\n";
    return 1;
}
