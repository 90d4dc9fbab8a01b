#include "sldyn/corresp.hpp"

#include "sldyn/errors.hpp"
#include "sldyn/repro.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace sldyn;

namespace {

struct ToggleWorld {
    Network net;
    TransitionGraph stg_s;
    TransitionGraph stg_l;
    ToggleWorld() : net(builtin_example("TOGGLE").network()) {
        ExampleSpec spec = builtin_example("TOGGLE");
        stg_s = build_stg_s(net, spec.sparams);
        stg_l = build_stg_l(net, *spec.lparams);
    }
};

}  // namespace

TEST_CASE("state embedding doubles levels; restriction halves them") {
    CHECK(embed_state({1, 0}) == std::vector<int>{2, 0});
    CHECK(restrict_state({2, 0}) == std::vector<int>{1, 0});
    try {
        restrict_state({1, 1});
        FAIL("expected OddComponent");
    } catch (const EngineError& e) {
        CHECK(e.code == EngineError::Code::OddComponent);
    }
}

TEST_CASE("embedded states are exactly the all-even states") {
    ToggleWorld w;
    std::set<int> embedded;
    for (int r = 0; r < w.stg_s.state_count(); ++r)
        embedded.insert(w.stg_l.space.rank(embed_state(w.stg_s.space.unrank(r))));
    CHECK(embedded.size() == 4);
    for (int r = 0; r < w.stg_l.state_count(); ++r) {
        auto levels = w.stg_l.space.unrank(r);
        bool even = true;
        for (int v : levels)
            even = even && v % 2 == 0;
        CHECK(even == (embedded.count(r) > 0));
    }
}

TEST_CASE("an edge lifts through the unique bridge state") {
    ToggleWorld w;
    auto lifted = lift_path({{0, 0}, {1, 0}}, w.stg_s, w.stg_l);
    REQUIRE(lifted.size() == 3);
    CHECK(lifted[0] == std::vector<int>{0, 0});
    CHECK(lifted[1] == std::vector<int>{1, 0});
    CHECK(lifted[2] == std::vector<int>{2, 0});
}

TEST_CASE("an empty path lifts to an empty path") {
    ToggleWorld w;
    CHECK(lift_path({}, w.stg_s, w.stg_l).empty());
    CHECK(lift_path({{1, 0}}, w.stg_s, w.stg_l) == std::vector<std::vector<int>>{{2, 0}});
}

TEST_CASE("a two-edge path lifts to a four-edge path") {
    ToggleWorld w;
    auto lifted = lift_path({{1, 1}, {0, 1}, {0, 1}}, w.stg_s, w.stg_l);
    REQUIRE(lifted.size() == 5);
    CHECK(lifted[0] == std::vector<int>{2, 2});
    CHECK(lifted[1] == std::vector<int>{1, 2});
    CHECK(lifted[2] == std::vector<int>{0, 2});
    CHECK(lifted[3] == std::vector<int>{0, 2});  // self-loop lifts to two loop steps
    CHECK(lifted[4] == std::vector<int>{0, 2});
    for (std::size_t i = 0; i + 1 < lifted.size(); ++i)
        CHECK(w.stg_l.has_edge(w.stg_l.space.rank(lifted[i]), w.stg_l.space.rank(lifted[i + 1])));
}

TEST_CASE("lifting a non-path is refused") {
    ToggleWorld w;
    try {
        lift_path({{1, 0}, {0, 0}}, w.stg_s, w.stg_l);  // not an edge in the toggle
        FAIL("expected BadInput");
    } catch (const EngineError& e) {
        CHECK(e.code == EngineError::Code::BadInput);
    }
}

TEST_CASE("descent reduces one odd component per step") {
    ToggleWorld w;
    auto steps = descend_to_constant({1, 1}, w.stg_l);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0] == std::vector<int>{0, 1});  // first bidirectional wall in rank order
    CHECK(steps[1] == std::vector<int>{0, 2});  // the corner (0,0) is entrance-only
    int previous = 2;
    for (const auto& state : steps) {
        int odd = (state[0] & 1) + (state[1] & 1);
        CHECK(odd == previous - 1);
        previous = odd;
    }

    CHECK(descend_to_constant({2, 0}, w.stg_l).empty());
    CHECK(descend_to_constant({1, 0}, w.stg_l) == std::vector<std::vector<int>>{{2, 0}});
}

TEST_CASE("path queries on the 3d example") {
    ExampleSpec spec = builtin_example("PATH3D");
    Network net = spec.network();
    TransitionGraph s = build_stg_s(net, spec.sparams);
    TransitionGraph l = build_stg_l(net, canonical_lift(net, spec.sparams));

    CHECK(!has_path(s, {0, 0, 1}, {1, 0, 0}));
    CHECK(has_path(l, embed_state({0, 0, 1}), embed_state({1, 0, 0})));
    CHECK(witness_path(s, {0, 0, 1}, {1, 0, 0}).empty());
    auto lw = witness_path(l, embed_state({0, 0, 1}), embed_state({1, 0, 0}));
    REQUIRE(!lw.empty());
    for (std::size_t i = 0; i + 1 < lw.size(); ++i)
        CHECK(l.has_edge(l.space.rank(lw[i]), l.space.rank(lw[i + 1])));
}

TEST_CASE("self-path convention: non-strict true, strict needs a cycle") {
    TransitionGraph g;
    g.model = Model::S;
    g.space.model = Model::S;
    g.space.dims = {2};
    g.succ = {{}, {}};
    CHECK(has_path(g, {0}, {0}));
    CHECK(!has_path_strict(g, {0}, {0}));
    g.succ = {{1}, {0}};
    CHECK(has_path_strict(g, {0}, {0}));
}

TEST_CASE("the toggle Morse-set map sends each fixed point to its image") {
    ToggleWorld w;
    MorseGraph md_s = morse_graph(w.stg_s);
    MorseGraph md_l = morse_graph(w.stg_l);
    auto map = morse_set_map(md_s, md_l);
    REQUIRE(map.size() == 2);
    for (int a = 0; a < 2; ++a) {
        int s_state = md_s.sets[a].states[0];
        int image_state = md_l.space.rank(embed_state(md_s.space.unrank(s_state)));
        CHECK(md_l.sets[map[a]].states == std::vector<int>{image_state});
    }

    auto amap = attractor_map(md_s, w.stg_l, md_l);
    REQUIRE(amap.size() == 2);
    CHECK(amap[0].second != amap[1].second);
}

TEST_CASE("toggle correspondence: all checks pass, the map is not onto") {
    ExampleSpec spec = builtin_example("TOGGLE");
    Network net = spec.network();
    CorrespondenceReport rep = verify_correspondence(net, spec.sparams);
    CHECK(rep.pass);
    CHECK(rep.checks.size() == 7);
    for (const CheckResult& c : rep.checks)
        CHECK(c.pass);
    CHECK(!rep.morse_map_surjective);
    CHECK(rep.morse_map_injective);
    CHECK(rep.attractor_map_injective);
    CHECK(rep.s_state_count == 4);
    CHECK(rep.l_state_count == 9);
}

TEST_CASE("self-activator correspondence: everything bijective") {
    ExampleSpec spec = builtin_example("SELF");
    CorrespondenceReport rep = verify_correspondence(spec.network(), spec.sparams);
    CHECK(rep.pass);
    CHECK(rep.morse_map_surjective);
    CHECK(rep.morse_map_injective);
    CHECK(rep.attractor_map_injective);
}

TEST_CASE("correspondence holds on random instances") {
    std::mt19937 rng(51);
    for (int i = 0; i < 40; ++i) {
        auto inst = testsupport::random_instance(rng);
        CorrespondenceReport rep = verify_correspondence(inst.net, inst.params);
        CHECK(rep.pass);
    }
}
