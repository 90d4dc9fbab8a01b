#include "sldyn/params.hpp"

#include "sldyn/repro.hpp"
#include "sldyn/serialize.hpp"
#include "sldyn/stg.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <random>

using namespace sldyn;

namespace {

struct Fx {
    Network net;
    SParams s;
    explicit Fx(const std::string& name) : net(builtin_example(name).network()) {
        s = builtin_example(name).sparams;
    }
};

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
    for (const auto& v : vs)
        if (v.code == code)
            return true;
    return false;
}

}  // namespace

TEST_CASE("toggle parameters are valid and regular") {
    Fx fx("TOGGLE");
    CHECK(validate_s(fx.net, fx.s).empty());
}

TEST_CASE("a focal coordinate on a threshold is a regularity violation") {
    Fx fx("TOGGLE");
    // raise u on y->x so x's rate at low y equals x's own threshold
    fx.s.edge[*fx.net.edge_index(1, 0)].u = 2;
    auto vs = validate_s(fx.net, fx.s);
    REQUIRE(!vs.empty());
    int hits = 0;
    for (const auto& v : vs) {
        CHECK(v.code == "focal-on-threshold");
        CHECK(v.where == "x");
        CHECK(!violation_is_structural(v));
        ++hits;
    }
    CHECK(hits == 2);  // both domains with y at level 0
}

TEST_CASE("l >= u is a bounds violation") {
    Network net = parse_network("x : (x)");
    SParams p;
    p.gamma = {Rational(1)};
    p.edge = {SEdgeParams{1, 1, 2}};
    CHECK(has_code(validate_s(net, p), "bounds-order"));
}

TEST_CASE("duplicate thresholds on one node are rejected") {
    Fx fx("ATTR4D");
    // give w's two thresholds the same value
    fx.s.edge[*fx.net.edge_index(3, 0)].theta = 3;
    fx.s.edge[*fx.net.edge_index(3, 1)].theta = 3;
    CHECK(has_code(validate_s(fx.net, fx.s), "duplicate-theta"));
}

TEST_CASE("structural mismatches are reported distinctly") {
    Fx fx("TOGGLE");
    RawParams raw = to_raw(fx.net, fx.s);
    raw.gamma.erase("x");
    raw.edges["x->x"] = raw.edges.at("x->y");
    auto vs = validate_s(fx.net, raw);
    CHECK(has_code(vs, "missing-gamma"));
    CHECK(has_code(vs, "extra-edge"));
    for (const auto& v : vs)
        CHECK(violation_is_structural(v));
    CHECK_THROWS_AS(bind_s(fx.net, raw), std::invalid_argument);
}

TEST_CASE("an l-shaped record in an s file is wrong-kind") {
    Fx fx("TOGGLE");
    RawParams raw = to_raw(fx.net, fx.s);
    raw.edges.at("x->y").theta_minus = Rational(1);
    CHECK(has_code(validate_s(fx.net, raw), "wrong-kind"));
}

TEST_CASE("toggle bridge parameters are valid and regular") {
    ExampleSpec spec = builtin_example("TOGGLE");
    Network net = spec.network();
    CHECK(validate_l(net, *spec.lparams).empty());
}

TEST_CASE("bridge endpoint ordering and overlap are checked") {
    ExampleSpec spec = builtin_example("TOGGLE");
    Network net = spec.network();
    LParams p = *spec.lparams;
    p.edge[0].theta_minus = p.edge[0].theta_plus;
    CHECK(has_code(validate_l(net, p), "interval-order"));

    Network two_out = parse_network("x : (y)\ny : (x)(y)");
    LParams q;
    q.gamma = {Rational(1), Rational(1)};
    q.edge.assign(3, LEdgeParams{1, 3, Rational(3, 2), Rational(5, 2)});
    // y's two out-edges carry intersecting bridge intervals
    q.edge[*two_out.edge_index(1, 0)].theta_minus = 2;
    q.edge[*two_out.edge_index(1, 0)].theta_plus = 3;
    q.edge[*two_out.edge_index(1, 1)].theta_minus = Rational(5, 2);
    q.edge[*two_out.edge_index(1, 1)].theta_plus = 4;
    CHECK(has_code(validate_l(two_out, q), "interval-overlap"));
}

TEST_CASE("a focal coordinate on a bridge endpoint is a regularity violation") {
    ExampleSpec spec = builtin_example("TOGGLE");
    Network net = spec.network();
    LParams p = *spec.lparams;
    p.edge[*net.edge_index(1, 0)].u = Rational(5, 2);  // hits x's theta_plus
    CHECK(has_code(validate_l(net, p), "focal-on-threshold"));
}

TEST_CASE("threshold orders sort targets by threshold") {
    {
        Fx fx("ATTR4D");
        auto orders = threshold_order(fx.net, fx.s);
        int w = *fx.net.index_of("w");
        CHECK(orders[w] == std::vector<int>{*fx.net.index_of("x"), *fx.net.index_of("y")});
        int z = *fx.net.index_of("z");
        CHECK(orders[z] == std::vector<int>{*fx.net.index_of("y")});
    }
    {
        Fx fx("MERGE5D");
        auto orders = threshold_order(fx.net, fx.s);
        int v = *fx.net.index_of("v");
        CHECK(orders[v] == std::vector<int>{*fx.net.index_of("w"), *fx.net.index_of("z"),
                                            *fx.net.index_of("y")});
    }
    {
        Fx fx("COLLAPSE5D");
        auto orders = threshold_order(fx.net, fx.s);
        int v = *fx.net.index_of("v");
        CHECK(orders[v] == std::vector<int>{*fx.net.index_of("w"), *fx.net.index_of("x"),
                                            *fx.net.index_of("y")});
    }
}

TEST_CASE("toggle target table is the hand-computed one") {
    Fx fx("TOGGLE");
    StateSpace sp = StateSpace::for_model(fx.net, Model::S);
    auto table = discrete_map_s(fx.net, fx.s);
    REQUIRE(table.size() == 4);
    CHECK(table[sp.rank({0, 0})] == sp.rank({1, 1}));
    CHECK(table[sp.rank({1, 1})] == sp.rank({0, 0}));
    CHECK(table[sp.rank({1, 0})] == sp.rank({1, 0}));
    CHECK(table[sp.rank({0, 1})] == sp.rank({0, 1}));
}

TEST_CASE("self activator target table") {
    Fx fx("SELF");
    auto table = discrete_map_s(fx.net, fx.s);
    CHECK(table == std::vector<int>{0, 1});
}

TEST_CASE("attracting domains are exactly the table fixed points") {
    for (const char* name : {"SELF", "TOGGLE", "PATH3D", "ATTR4D"}) {
        Fx fx(name);
        auto table = discrete_map_s(fx.net, fx.s);
        TransitionGraph g = build_stg_s(fx.net, fx.s);
        for (int r = 0; r < g.state_count(); ++r)
            CHECK(g.has_edge(r, r) == (table[r] == r));
    }
}

TEST_CASE("bridge target table matches the switching one for corresponding fixtures") {
    for (const char* name : {"SELF", "TOGGLE"}) {
        ExampleSpec spec = builtin_example(name);
        Network net = spec.network();
        CHECK(class_signature(net, spec.sparams) == class_signature(net, *spec.lparams));
    }
}

TEST_CASE("class equivalence: scaling values per node consistently preserves the class") {
    Fx fx("TOGGLE");
    SParams doubled = fx.s;
    for (auto& e : doubled.edge) {
        e.l = e.l * 2;
        e.u = e.u * 2;
        e.theta = e.theta * 2;
    }
    CHECK(validate_s(fx.net, doubled).empty());
    CHECK(classes_equivalent(class_signature(fx.net, fx.s), class_signature(fx.net, doubled)));
    CHECK(classes_equivalent(class_signature(fx.net, fx.s), class_signature(fx.net, fx.s)));
}

TEST_CASE("class equivalence: dropping u below the threshold changes the table") {
    Fx fx("TOGGLE");
    SParams low = fx.s;
    for (auto& e : low.edge)
        e.u = Rational(3, 2);
    CHECK(validate_s(fx.net, low).empty());
    auto a = class_signature(fx.net, fx.s);
    auto b = class_signature(fx.net, low);
    CHECK(!classes_equivalent(a, b));
    StateSpace sp = StateSpace::for_model(fx.net, Model::S);
    CHECK(a.targets_l[sp.rank({0, 0})] != b.targets_l[sp.rank({0, 0})]);
}

TEST_CASE("a regular bridge parameter may still aim a focal point into a bridge") {
    // Regularity only excludes the endpoints; with u = 2 the focal point of
    // the all-low domain sits strictly inside [3/2, 5/2], so the target table
    // carries a bridge (odd) component and the signature matches no
    // switching-model signature.
    ExampleSpec spec = builtin_example("TOGGLE");
    Network net = spec.network();
    LParams p = *spec.lparams;
    for (auto& e : p.edge)
        e.u = 2;
    REQUIRE(validate_l(net, p).empty());

    StateSpace s_space = StateSpace::for_model(net, Model::S);
    StateSpace l_space = StateSpace::for_model(net, Model::L);
    auto table = discrete_map_ln(net, p);
    CHECK(l_space.unrank(table[s_space.rank({0, 0})]) == std::vector<int>{1, 1});

    SParams s = spec.sparams;
    for (auto& e : s.edge)
        e.u = 2;  // not regular for the switching model (2 == theta)
    CHECK(!validate_s(net, s).empty());
    CHECK(!classes_equivalent(class_signature(net, p), class_signature(net, spec.sparams)));
}

TEST_CASE("canonical lift of the toggle uses a quarter of the least gap") {
    Fx fx("TOGGLE");
    CHECK(lift_half_width(fx.net, fx.s) == Rational(1, 4));
    LParams lifted = canonical_lift(fx.net, fx.s);
    for (const auto& e : lifted.edge) {
        CHECK(e.theta_minus == Rational(7, 4));
        CHECK(e.theta_plus == Rational(9, 4));
        CHECK(e.l == 1);
        CHECK(e.u == 3);
    }
}

TEST_CASE("canonical lift of the self activator") {
    Fx fx("SELF");
    LParams lifted = canonical_lift(fx.net, fx.s);
    CHECK(lifted.edge[0].theta_minus == Rational(7, 4));
    CHECK(lifted.edge[0].theta_plus == Rational(9, 4));
}

TEST_CASE("canonical lift preserves the class signature on random instances") {
    std::mt19937 rng(21);
    for (int i = 0; i < 60; ++i) {
        auto inst = testsupport::random_instance(rng);
        LParams lifted = canonical_lift(inst.net, inst.params);
        CHECK(validate_l(inst.net, lifted).empty());
        CHECK(classes_equivalent(class_signature(inst.net, inst.params),
                                 class_signature(inst.net, lifted)));
    }
}

TEST_CASE("table totality") {
    Fx fx("MERGE5D");
    CHECK(discrete_map_s(fx.net, fx.s).size() == 384);
    LParams lifted = canonical_lift(fx.net, fx.s);
    CHECK(discrete_map_ln(fx.net, lifted).size() == 384);
}

TEST_CASE("equal signatures give identical graphs under perturbation within the slack") {
    for (const char* name : {"SELF", "TOGGLE", "PATH3D", "ATTR4D"}) {
        Fx fx(name);
        TransitionGraph base_s = build_stg_s(fx.net, fx.s);
        TransitionGraph base_l = build_stg_l(fx.net, canonical_lift(fx.net, fx.s));
        auto base_sig = class_signature(fx.net, fx.s);

        // quarter of the least gap is inside every strict inequality's slack
        // for thresholds; values get a much smaller relative nudge
        Rational eps = lift_half_width(fx.net, fx.s) / 4;
        std::vector<SParams> variants;
        for (std::size_t e = 0; e < fx.s.edge.size(); ++e) {
            for (int dir : {-1, +1}) {
                SParams v = fx.s;
                v.edge[e].theta += dir * eps;
                variants.push_back(v);
                v = fx.s;
                v.edge[e].u += dir * eps / 1000;
                variants.push_back(v);
                v = fx.s;
                v.edge[e].l += dir * (fx.s.edge[e].l / 1000000);
                variants.push_back(v);
            }
        }
        for (std::size_t i = 0; i < fx.s.gamma.size(); ++i) {
            SParams v = fx.s;
            v.gamma[i] += fx.s.gamma[i] / 1000000;
            variants.push_back(v);
        }
        for (const SParams& v : variants) {
            REQUIRE(validate_s(fx.net, v).empty());
            REQUIRE(classes_equivalent(class_signature(fx.net, v), base_sig));
            CHECK(build_stg_s(fx.net, v) == base_s);
            CHECK(build_stg_l(fx.net, canonical_lift(fx.net, v)) == base_l);
        }
    }
}

TEST_CASE("validation is deterministic and idempotent") {
    Fx fx("TOGGLE");
    fx.s.edge[0].u = 2;
    auto first = validate_s(fx.net, fx.s);
    auto second = validate_s(fx.net, fx.s);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].code == second[i].code);
        CHECK(first[i].where == second[i].where);
        CHECK(first[i].detail == second[i].detail);
    }
}

TEST_CASE("parameter json round trips") {
    Fx fx("ATTR4D");
    RawParams raw = to_raw(fx.net, fx.s);
    RawParams back = raw_params_from_json(raw_params_to_json(raw));
    CHECK(bind_s(fx.net, back) == fx.s);

    ExampleSpec spec = builtin_example("TOGGLE");
    RawParams lraw = to_raw(spec.network(), *spec.lparams);
    CHECK(bind_l(spec.network(), raw_params_from_json(raw_params_to_json(lraw))) ==
          *spec.lparams);
}
