#pragma once

#include "sldyn/network.hpp"
#include "sldyn/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sldyn {

// Reference to one scalar of an edge parameter.
struct ParamRef {
    enum class Field { L, U, Theta };
    Field field;
    std::string source;
    std::string target;

    Rational value(const Network& net, const SParams& p) const;
    std::string text() const;
};

// Product of sums of parameter scalars; covers every constraint shape the
// fixtures need (plain values, products, and sums inside products).
struct ParamExpr {
    std::vector<std::vector<ParamRef>> groups;

    Rational eval(const Network& net, const SParams& p) const;
    std::string text() const;
};

struct Inequality {
    ParamExpr lhs;
    ParamExpr rhs;

    bool holds(const Network& net, const SParams& p) const {
        return lhs.eval(net, p) < rhs.eval(net, p);
    }
    std::string text() const { return lhs.text() + " < " + rhs.text(); }
};

// One shipped example: network, concrete rationals, the inequality system
// the rationals were checked against, and (for some fixtures) companions: a
// hand-picked bridge parameter or an alternative switching parameter.
struct ExampleSpec {
    std::string name;
    std::string network_text;
    SParams sparams;
    std::vector<Inequality> inequalities;
    std::optional<LParams> lparams;              // hand-picked bridge fixture
    std::optional<SParams> alt_sparams;          // alternative parameterization
    std::vector<Inequality> alt_inequalities;
    std::string alt_note;

    Network network() const { return parse_network(network_text); }
};

// Names: SELF, TOGGLE, PATH3D, ATTR4D, MERGE5D, COLLAPSE5D.
const std::vector<std::string>& fixture_names();
ExampleSpec builtin_example(const std::string& name);  // EngineError::UnknownFixture

struct ReproResult {
    std::string fixture;
    bool pass = false;
    std::string json;
};

// Re-evaluates every fixture inequality, builds both models, and runs the
// fixture's claim checks; the report is byte-stable across runs.
ReproResult run_repro(const std::string& name, int threads = 1);

}  // namespace sldyn
