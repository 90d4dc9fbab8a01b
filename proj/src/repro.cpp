#include "sldyn/repro.hpp"

#include "sldyn/corresp.hpp"
#include "sldyn/errors.hpp"
#include "sldyn/morse.hpp"
#include "sldyn/stg.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace sldyn {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Constraint expressions
// ---------------------------------------------------------------------------

Rational ParamRef::value(const Network& net, const SParams& p) const {
    auto src = net.index_of(source);
    auto tgt = net.index_of(target);
    if (!src || !tgt)
        throw EngineError(EngineError::Code::BadInput, "unknown node in constraint: " + text());
    auto e = net.edge_index(*src, *tgt);
    if (!e)
        throw EngineError(EngineError::Code::BadInput, "unknown edge in constraint: " + text());
    switch (field) {
        case Field::L: return p.edge[*e].l;
        case Field::U: return p.edge[*e].u;
        case Field::Theta: return p.edge[*e].theta;
    }
    throw EngineError(EngineError::Code::BadInput, "bad constraint field");
}

std::string ParamRef::text() const {
    const char* f = field == Field::L ? "l" : field == Field::U ? "u" : "theta";
    return std::string(f) + "(" + source + "->" + target + ")";
}

Rational ParamExpr::eval(const Network& net, const SParams& p) const {
    Rational product = 1;
    for (const auto& group : groups) {
        Rational sum = 0;
        for (const ParamRef& r : group)
            sum += r.value(net, p);
        product *= sum;
    }
    return product;
}

std::string ParamExpr::text() const {
    std::string out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g)
            out += "*";
        bool wrap = groups.size() > 1 && groups[g].size() > 1;
        if (wrap)
            out += "(";
        for (std::size_t i = 0; i < groups[g].size(); ++i) {
            if (i)
                out += "+";
            out += groups[g][i].text();
        }
        if (wrap)
            out += ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

namespace {

ParamRef pl(const char* s, const char* t) { return {ParamRef::Field::L, s, t}; }
ParamRef pu(const char* s, const char* t) { return {ParamRef::Field::U, s, t}; }
ParamRef pt(const char* s, const char* t) { return {ParamRef::Field::Theta, s, t}; }

// Product of single values: prod({a,b}) = a*b.
ParamExpr prod(std::vector<ParamRef> refs) {
    ParamExpr e;
    for (ParamRef& r : refs)
        e.groups.push_back({std::move(r)});
    return e;
}

// Sum group times optional extra factors: sum_times({a,b}, {c}) = (a+b)*c.
ParamExpr sum_times(std::vector<ParamRef> sum, std::vector<ParamRef> factors) {
    ParamExpr e;
    e.groups.push_back(std::move(sum));
    for (ParamRef& r : factors)
        e.groups.push_back({std::move(r)});
    return e;
}

ParamExpr val(ParamRef r) { return prod({std::move(r)}); }

// All pairwise `a < b` constraints between consecutive stages of a chain.
void chain(std::vector<Inequality>& out, std::vector<std::vector<ParamExpr>> stages) {
    for (std::size_t s = 0; s + 1 < stages.size(); ++s)
        for (const ParamExpr& a : stages[s])
            for (const ParamExpr& b : stages[s + 1])
                out.push_back(Inequality{a, b});
}

struct ParamsBuilder {
    const Network& net;
    SParams p;

    explicit ParamsBuilder(const Network& n) : net(n) {
        p.gamma.assign(n.node_count(), Rational(1));
        p.edge.resize(n.edges().size());
    }
    // l and u are the values transmitted along src->tgt; theta is the level
    // of src at which that transmission switches.
    ParamsBuilder& edge(const char* src, const char* tgt, int l, int u, int theta) {
        auto e = net.edge_index(*net.index_of(src), *net.index_of(tgt));
        p.edge.at(*e) = SEdgeParams{Rational(l), Rational(u), Rational(theta)};
        return *this;
    }
};

ExampleSpec make_self() {
    ExampleSpec spec;
    spec.name = "SELF";
    spec.network_text = "x : (x)";
    Network net = spec.network();
    spec.sparams = ParamsBuilder(net).edge("x", "x", 1, 3, 2).p;
    chain(spec.inequalities,
          {{val(pl("x", "x"))}, {val(pt("x", "x"))}, {val(pu("x", "x"))}});

    LParams lp;
    lp.gamma = {Rational(1)};
    lp.edge = {LEdgeParams{1, 3, Rational(7, 4), Rational(9, 4)}};
    spec.lparams = lp;
    return spec;
}

ExampleSpec make_toggle() {
    ExampleSpec spec;
    spec.name = "TOGGLE";
    spec.network_text = "x : (~y)\ny : (~x)";
    Network net = spec.network();
    spec.sparams = ParamsBuilder(net).edge("y", "x", 1, 3, 2).edge("x", "y", 1, 3, 2).p;
    chain(spec.inequalities,
          {{val(pl("y", "x"))}, {val(pt("x", "y"))}, {val(pu("y", "x"))}});
    chain(spec.inequalities,
          {{val(pl("x", "y"))}, {val(pt("y", "x"))}, {val(pu("x", "y"))}});

    LParams lp;
    lp.gamma = {Rational(1), Rational(1)};
    LEdgeParams bridge{1, 3, Rational(3, 2), Rational(5, 2)};
    lp.edge = {bridge, bridge};
    spec.lparams = lp;
    return spec;
}

ExampleSpec make_path3d() {
    ExampleSpec spec;
    spec.name = "PATH3D";
    spec.network_text = "x : (y)\ny : (~z)\nz : (~x)";
    Network net = spec.network();

    // z decreases everywhere: the values sent along x->z stay below z's
    // threshold.
    spec.sparams = ParamsBuilder(net)
                       .edge("y", "x", 1, 3, 2)
                       .edge("z", "y", 1, 3, 4)
                       .edge("x", "z", 1, 3, 2)
                       .p;
    chain(spec.inequalities,
          {{val(pl("z", "y"))}, {val(pt("y", "x"))}, {val(pu("z", "y"))}});
    chain(spec.inequalities,
          {{val(pl("y", "x"))}, {val(pt("x", "z"))}, {val(pu("y", "x"))}});
    chain(spec.inequalities,
          {{val(pl("x", "z"))}, {val(pu("x", "z"))}, {val(pt("z", "y"))}});

    // Alternative class with x->z straddling z's threshold: both witness
    // states become fixed points and the escape pair disappears.
    spec.alt_sparams = ParamsBuilder(net)
                           .edge("y", "x", 1, 3, 2)
                           .edge("z", "y", 1, 3, 2)
                           .edge("x", "z", 1, 3, 2)
                           .p;
    chain(spec.alt_inequalities,
          {{val(pl("z", "y"))}, {val(pt("y", "x"))}, {val(pu("z", "y"))}});
    chain(spec.alt_inequalities,
          {{val(pl("y", "x"))}, {val(pt("x", "z"))}, {val(pu("y", "x"))}});
    chain(spec.alt_inequalities,
          {{val(pl("x", "z"))}, {val(pt("z", "y"))}, {val(pu("x", "z"))}});
    spec.alt_note =
        "the two parameterizations of this example disagree: with "
        "l(x->z) < theta(z->y) < u(x->z) both escape endpoints are fixed points and no "
        "escape pair over non-fixed-point states exists; with u(x->z) < theta(z->y) the "
        "escape pair exists";
    return spec;
}

ExampleSpec make_attr4d() {
    ExampleSpec spec;
    spec.name = "ATTR4D";
    spec.network_text = "x : (y)(~w)\ny : (~z)(~w)\nz : (~y)\nw : (x)";
    Network net = spec.network();
    spec.sparams = ParamsBuilder(net)
                       .edge("y", "x", 1, 2, 5)
                       .edge("w", "x", 1, 2, 2)
                       .edge("z", "y", 1, 2, 2)
                       .edge("w", "y", 1, 4, 3)
                       .edge("y", "z", 1, 3, 3)
                       .edge("x", "w", 1, 4, 3)
                       .p;
    chain(spec.inequalities,
          {{prod({pl("w", "x"), pl("y", "x")})},
           {prod({pu("w", "x"), pl("y", "x")}), prod({pl("w", "x"), pu("y", "x")})},
           {val(pt("x", "w"))},
           {prod({pu("w", "x"), pu("y", "x")})}});
    chain(spec.inequalities,
          {{prod({pl("w", "y"), pl("z", "y")})},
           {prod({pl("w", "y"), pu("z", "y")})},
           {val(pt("y", "z"))},
           {prod({pu("w", "y"), pl("z", "y")})},
           {val(pt("y", "x"))},
           {prod({pu("w", "y"), pu("z", "y")})}});
    chain(spec.inequalities,
          {{val(pl("y", "z"))}, {val(pt("z", "y"))}, {val(pu("y", "z"))}});
    chain(spec.inequalities,
          {{val(pl("x", "w"))}, {val(pt("w", "x"))}, {val(pt("w", "y"))}, {val(pu("x", "w"))}});
    return spec;
}

ExampleSpec make_merge5d() {
    ExampleSpec spec;
    spec.name = "MERGE5D";
    spec.network_text = "x : (y)(~w)\ny : (v)(~w)(~z)\nz : (~y v)\nw : (~v)(x)\nv : (x)(~y)(~w)";
    Network net = spec.network();
    spec.sparams = ParamsBuilder(net)
                       .edge("y", "x", 1, 3, 6)
                       .edge("w", "x", 1, 3, 5)
                       .edge("v", "y", 1, 8, 12)
                       .edge("w", "y", 1, 4, 6)
                       .edge("z", "y", 1, 2, 3)
                       .edge("y", "z", 1, 3, 3)
                       .edge("v", "z", 1, 3, 11)
                       .edge("v", "w", 1, 3, 10)
                       .edge("x", "w", 1, 3, 4)
                       .edge("x", "v", 1, 3, 5)
                       .edge("y", "v", 1, 3, 5)
                       .edge("w", "v", 1, 3, 4)
                       .p;

    chain(spec.inequalities,
          {{prod({pl("y", "x"), pl("w", "x")}), prod({pl("y", "x"), pu("w", "x")}),
            prod({pu("y", "x"), pl("w", "x")})},
           {val(pt("x", "w"))},
           {val(pt("x", "v"))},
           {prod({pu("y", "x"), pu("w", "x")})}});
    chain(spec.inequalities,
          {{prod({pl("v", "y"), pl("w", "y"), pl("z", "y")}),
            prod({pl("v", "y"), pl("w", "y"), pu("z", "y")})},
           {val(pt("y", "z"))},
           {prod({pl("v", "y"), pu("w", "y"), pl("z", "y")})},
           {val(pt("y", "v"))},
           {val(pt("y", "x"))},
           {prod({pl("v", "y"), pu("w", "y"), pu("z", "y")}),
            prod({pu("v", "y"), pl("w", "y"), pl("z", "y")}),
            prod({pu("v", "y"), pl("w", "y"), pu("z", "y")}),
            prod({pu("v", "y"), pu("w", "y"), pl("z", "y")}),
            prod({pu("v", "y"), pu("w", "y"), pu("z", "y")})}});
    chain(spec.inequalities,
          {{sum_times({pl("y", "z"), pl("v", "z")}, {})},
           {val(pt("z", "y"))},
           {sum_times({pl("y", "z"), pu("v", "z")}, {}),
            sum_times({pu("y", "z"), pl("v", "z")}, {}),
            sum_times({pu("y", "z"), pu("v", "z")}, {})}});
    chain(spec.inequalities,
          {{prod({pl("v", "w"), pl("x", "w")})},
           {prod({pu("v", "w"), pl("x", "w")}), prod({pl("v", "w"), pu("x", "w")})},
           {val(pt("w", "v"))},
           {val(pt("w", "x"))},
           {val(pt("w", "y"))},
           {prod({pu("v", "w"), pu("x", "w")})}});
    chain(spec.inequalities,
          {{prod({pl("x", "v"), pl("y", "v"), pl("w", "v")})},
           {prod({pl("x", "v"), pl("y", "v"), pu("w", "v")}),
            prod({pl("x", "v"), pu("y", "v"), pl("w", "v")}),
            prod({pu("x", "v"), pl("y", "v"), pl("w", "v")})},
           {prod({pl("x", "v"), pu("y", "v"), pu("w", "v")}),
            prod({pu("x", "v"), pl("y", "v"), pu("w", "v")}),
            prod({pu("x", "v"), pu("y", "v"), pl("w", "v")})},
           {val(pt("v", "w"))},
           {val(pt("v", "z"))},
           {val(pt("v", "y"))},
           {prod({pu("x", "v"), pu("y", "v"), pu("w", "v")})}});
    return spec;
}

ExampleSpec make_collapse5d() {
    ExampleSpec spec;
    spec.name = "COLLAPSE5D";
    spec.network_text = "x : (y v)(~w)\ny : (~z)(~w)(~v)\nz : (~y)\nw : (x)(~v)\nv : (x)(~y)(~w)";
    Network net = spec.network();
    spec.sparams = ParamsBuilder(net)
                       .edge("y", "x", 1, 8, 18)
                       .edge("v", "x", 1, 8, 11)
                       .edge("w", "x", 1, 4, 5)
                       .edge("z", "y", 1, 2, 2)
                       .edge("w", "y", 1, 4, 6)
                       .edge("v", "y", 1, 4, 12)
                       .edge("y", "z", 1, 3, 9)
                       .edge("x", "w", 1, 3, 10)
                       .edge("v", "w", 1, 3, 10)
                       .edge("x", "v", 1, 3, 11)
                       .edge("y", "v", 1, 3, 17)
                       .edge("w", "v", 1, 3, 4)
                       .p;

    // x holds its top level when any two of {y high, v high, w low} hold;
    // in particular v alone sustains x against low y, which is what parks
    // the system at the fixed point.
    chain(spec.inequalities,
          {{sum_times({pl("y", "x"), pl("v", "x")}, {pl("w", "x")})},
           {sum_times({pu("y", "x"), pl("v", "x")}, {pl("w", "x")}),
            sum_times({pl("y", "x"), pu("v", "x")}, {pl("w", "x")}),
            sum_times({pl("y", "x"), pl("v", "x")}, {pu("w", "x")})},
           {val(pt("x", "w"))},
           {val(pt("x", "v"))},
           {sum_times({pu("y", "x"), pl("v", "x")}, {pu("w", "x")}),
            sum_times({pl("y", "x"), pu("v", "x")}, {pu("w", "x")}),
            sum_times({pu("y", "x"), pu("v", "x")}, {pl("w", "x")})},
           {sum_times({pu("y", "x"), pu("v", "x")}, {pu("w", "x")})}});
    chain(spec.inequalities,
          {{prod({pl("z", "y"), pl("w", "y"), pl("v", "y")})},
           {prod({pu("z", "y"), pl("w", "y"), pl("v", "y")}),
            prod({pl("z", "y"), pu("w", "y"), pl("v", "y")}),
            prod({pl("z", "y"), pl("w", "y"), pu("v", "y")}),
            prod({pu("z", "y"), pu("w", "y"), pl("v", "y")}),
            prod({pu("z", "y"), pl("w", "y"), pu("v", "y")})},
           {val(pt("y", "z"))},
           {prod({pl("z", "y"), pu("w", "y"), pu("v", "y")})},
           {val(pt("y", "v"))},
           {val(pt("y", "x"))},
           {prod({pu("z", "y"), pu("w", "y"), pu("v", "y")})}});
    chain(spec.inequalities,
          {{val(pl("y", "z"))}, {val(pt("z", "y"))}, {val(pu("y", "z"))}});
    chain(spec.inequalities,
          {{prod({pl("v", "w"), pl("x", "w")})},
           {prod({pu("v", "w"), pl("x", "w")}), prod({pl("v", "w"), pu("x", "w")})},
           {val(pt("w", "v"))},
           {val(pt("w", "x"))},
           {val(pt("w", "y"))},
           {prod({pu("v", "w"), pu("x", "w")})}});
    chain(spec.inequalities,
          {{prod({pl("x", "v"), pl("y", "v"), pl("w", "v")})},
           {prod({pl("x", "v"), pl("y", "v"), pu("w", "v")}),
            prod({pl("x", "v"), pu("y", "v"), pl("w", "v")}),
            prod({pu("x", "v"), pl("y", "v"), pl("w", "v")})},
           {prod({pl("x", "v"), pu("y", "v"), pu("w", "v")}),
            prod({pu("x", "v"), pl("y", "v"), pu("w", "v")}),
            prod({pu("x", "v"), pu("y", "v"), pl("w", "v")})},
           {val(pt("v", "w"))},
           {val(pt("v", "x"))},
           {val(pt("v", "y"))},
           {prod({pu("x", "v"), pu("y", "v"), pu("w", "v")})}});
    return spec;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"SELF",   "TOGGLE",  "PATH3D",
                                                   "ATTR4D", "MERGE5D", "COLLAPSE5D"};
    return names;
}

ExampleSpec builtin_example(const std::string& name) {
    if (name == "SELF")
        return make_self();
    if (name == "TOGGLE")
        return make_toggle();
    if (name == "PATH3D")
        return make_path3d();
    if (name == "ATTR4D")
        return make_attr4d();
    if (name == "MERGE5D")
        return make_merge5d();
    if (name == "COLLAPSE5D")
        return make_collapse5d();
    throw EngineError(EngineError::Code::UnknownFixture, "unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------
// Claim checks
// ---------------------------------------------------------------------------

namespace {

struct Claim {
    std::string name;
    bool pass = false;
    json detail = json::object();
};

json state_json(const StateSpace& space, int rank) { return json(space.unrank(rank)); }

// Pairwise reachability of a small graph (non-strict on the diagonal).
std::vector<std::vector<char>> reach_matrix(const TransitionGraph& g) {
    const int n = g.state_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack{s};
        reach[s][s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.succ[v])
                if (!reach[s][w]) {
                    reach[s][w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return reach;
}

void claims_self(const VerifyArtifacts& art, const CorrespondenceReport& rep,
                 std::vector<Claim>& out) {
    Claim fps{"two-fixed-point-attractors"};
    auto all_fp_attractors = [](const MorseGraph& mg) {
        if (mg.set_count() != 2)
            return false;
        for (int a = 0; a < mg.set_count(); ++a)
            if (!mg.attractor[a] || mg.labels[a].kind != MorseKind::FP)
                return false;
        return true;
    };
    fps.pass = all_fp_attractors(art.md_s) && all_fp_attractors(art.md_l);
    fps.detail["s_sets"] = art.md_s.set_count();
    fps.detail["l_sets"] = art.md_l.set_count();
    out.push_back(fps);

    Claim bij{"maps-bijective"};
    bij.pass = rep.morse_map_injective && rep.morse_map_surjective &&
               rep.attractor_map_injective;
    out.push_back(bij);
}

void claims_toggle(const ExampleSpec& spec, const Network& net, const VerifyArtifacts& art,
                   const CorrespondenceReport& rep, int threads, std::vector<Claim>& out) {
    const StateSpace& sp = art.stg_s.space;

    Claim exact{"stg-s-exact"};
    {
        TransitionGraph expected;
        expected.model = Model::S;
        expected.space = sp;
        expected.succ.resize(4);
        auto add_edge = [&](std::vector<int> a, std::vector<int> b) {
            expected.succ[sp.rank(a)].push_back(sp.rank(b));
        };
        add_edge({0, 0}, {1, 0});
        add_edge({0, 0}, {0, 1});
        add_edge({1, 1}, {1, 0});
        add_edge({1, 1}, {0, 1});
        add_edge({1, 0}, {1, 0});
        add_edge({0, 1}, {0, 1});
        for (auto& s : expected.succ)
            std::sort(s.begin(), s.end());
        exact.pass = art.stg_s == expected;
        exact.detail["states"] = art.stg_s.state_count();
        exact.detail["edges"] = art.stg_s.edge_count();
    }
    out.push_back(exact);

    Claim lstructure{"stg-l-structure"};
    {
        TransitionGraph hand = build_stg_l(net, *spec.lparams, threads);
        const StateSpace& lsp = hand.space;
        bool pass = hand.state_count() == 9;
        pass = pass && hand == art.stg_l;  // same class, same graph

        std::vector<int> loops;
        for (int r = 0; r < hand.state_count(); ++r)
            if (hand.has_edge(r, r))
                loops.push_back(r);
        std::vector<int> expected_loops = {lsp.rank({0, 2}), lsp.rank({2, 0})};
        std::sort(expected_loops.begin(), expected_loops.end());
        pass = pass && loops == expected_loops;

        std::vector<int> clover;
        for (std::vector<int> s : {std::vector<int>{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}})
            clover.push_back(lsp.rank(s));
        std::sort(clover.begin(), clover.end());
        bool found = false;
        for (const MorseSet& ms : recurrent_components(hand))
            if (ms.states == clover)
                found = true;
        pass = pass && found;
        lstructure.pass = pass;
        lstructure.detail["states"] = hand.state_count();
        lstructure.detail["self_loops"] = json::array();
        for (int r : loops)
            lstructure.detail["self_loops"].push_back(state_json(lsp, r));
    }
    out.push_back(lstructure);

    Claim morse_s{"morse-s-two-incomparable-fps"};
    {
        const MorseGraph& mg = art.md_s;
        morse_s.pass = mg.set_count() == 2 && mg.attractor[0] && mg.attractor[1] &&
                       mg.labels[0].kind == MorseKind::FP && mg.labels[1].kind == MorseKind::FP &&
                       !mg.reaches(0, 1) && !mg.reaches(1, 0);
    }
    out.push_back(morse_s);

    Claim morse_l{"morse-l-fc-over-fps"};
    {
        const MorseGraph& mg = art.md_l;
        int fp = 0, fc = -1;
        for (int a = 0; a < mg.set_count(); ++a) {
            if (mg.labels[a].kind == MorseKind::FP && mg.attractor[a])
                ++fp;
            if (mg.labels[a].kind == MorseKind::FC)
                fc = a;
        }
        bool pass = mg.set_count() == 3 && fp == 2 && fc >= 0 && !mg.attractor[fc];
        if (pass) {
            std::set<int> below(mg.down[fc].begin(), mg.down[fc].end());
            for (int a = 0; a < mg.set_count(); ++a)
                if (a != fc)
                    pass = pass && below.count(a);
        }
        morse_l.pass = pass;
    }
    out.push_back(morse_l);

    Claim omit{"morse-map-omits-fc"};
    {
        std::set<int> image(rep.morse_map.begin(), rep.morse_map.end());
        int fc = -1;
        for (int a = 0; a < art.md_l.set_count(); ++a)
            if (art.md_l.labels[a].kind == MorseKind::FC)
                fc = a;
        omit.pass = !rep.morse_map_surjective && fc >= 0 && !image.count(fc);
    }
    out.push_back(omit);
}

// Ordered pairs (u, u') with no path u -> u' but a path between the embedded
// states; optionally restricted to states outside `excluded`.
std::vector<std::pair<int, int>> escape_pairs(const TransitionGraph& stg_s,
                                              const TransitionGraph& stg_l,
                                              const std::set<int>& excluded) {
    auto s_reach = reach_matrix(stg_s);
    auto l_reach = reach_matrix(stg_l);
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < stg_s.state_count(); ++a) {
        if (excluded.count(a))
            continue;
        int la = stg_l.space.rank(embed_state(stg_s.space.unrank(a)));
        for (int b = 0; b < stg_s.state_count(); ++b) {
            if (a == b || excluded.count(b) || s_reach[a][b])
                continue;
            int lb = stg_l.space.rank(embed_state(stg_s.space.unrank(b)));
            if (l_reach[la][lb])
                out.emplace_back(a, b);
        }
    }
    return out;
}

void claims_path3d(const ExampleSpec& spec, const Network& net, const VerifyArtifacts& art,
                   int threads, std::vector<Claim>& out) {
    const StateSpace& sp = art.stg_s.space;

    Claim loop{"unique-self-loop"};
    {
        std::vector<int> loops;
        for (int r = 0; r < art.stg_s.state_count(); ++r)
            if (art.stg_s.has_edge(r, r))
                loops.push_back(r);
        loop.pass = loops == std::vector<int>{sp.rank({1, 1, 0})};
        loop.detail["self_loops"] = json::array();
        for (int r : loops)
            loop.detail["self_loops"].push_back(state_json(sp, r));
    }
    out.push_back(loop);

    Claim escape{"escape-pair-exists"};
    {
        auto pairs = escape_pairs(art.stg_s, art.stg_l, {});
        std::pair<int, int> distinguished{sp.rank({0, 0, 1}), sp.rank({1, 0, 0})};
        bool has_distinguished =
            std::find(pairs.begin(), pairs.end(), distinguished) != pairs.end();
        escape.pass = !pairs.empty() && has_distinguished;
        escape.detail["count"] = pairs.size();
        escape.detail["distinguished_pair"] =
            json::array({state_json(sp, distinguished.first), state_json(sp, distinguished.second)});
        escape.detail["distinguished_pair_found"] = has_distinguished;
    }
    out.push_back(escape);

    Claim printed{"printed-variant-no-nonfp-escape-pair"};
    {
        const SParams& alt = *spec.alt_sparams;
        bool holds = true;
        for (const Inequality& iq : spec.alt_inequalities)
            holds = holds && iq.holds(net, alt);
        TransitionGraph alt_s = build_stg_s(net, alt, threads);
        TransitionGraph alt_l = build_stg_l(net, canonical_lift(net, alt), threads);
        std::set<int> fixed_points;
        MorseGraph mg = morse_graph(alt_s);
        for (int a = 0; a < mg.set_count(); ++a)
            if (mg.attractor[a] && mg.sets[a].states.size() == 1)
                fixed_points.insert(mg.sets[a].states[0]);
        auto pairs = escape_pairs(alt_s, alt_l, fixed_points);
        printed.pass = holds && pairs.empty();
        printed.detail["alt_inequalities_hold"] = holds;
        printed.detail["fixed_points"] = json::array();
        for (int r : fixed_points)
            printed.detail["fixed_points"].push_back(state_json(sp, r));
        printed.detail["escape_pairs_over_non_fixed_points"] = pairs.size();
        printed.detail["discrepancy"] = spec.alt_note;
    }
    out.push_back(printed);
}

void claims_attr4d(const VerifyArtifacts& art, std::vector<Claim>& out) {
    Claim counts{"state-counts"};
    counts.pass = art.stg_s.state_count() == 36 && art.stg_l.state_count() == 225;
    counts.detail["s_states"] = art.stg_s.state_count();
    counts.detail["l_states"] = art.stg_l.state_count();
    out.push_back(counts);

    Claim escape{"escape-from-attractor"};
    {
        const MorseGraph& mg = art.md_s;
        auto l_reach = reach_matrix(art.stg_l);
        bool found = false;
        for (int a = 0; a < mg.set_count() && !found; ++a) {
            if (!mg.attractor[a] || mg.sets[a].states.size() < 2)
                continue;
            std::set<int> members(mg.sets[a].states.begin(), mg.sets[a].states.end());
            for (int u : mg.sets[a].states) {
                int lu = art.stg_l.space.rank(embed_state(art.stg_s.space.unrank(u)));
                for (int v = 0; v < art.stg_s.state_count(); ++v) {
                    if (members.count(v))
                        continue;
                    int lv = art.stg_l.space.rank(embed_state(art.stg_s.space.unrank(v)));
                    if (l_reach[lu][lv]) {
                        found = true;
                        escape.detail["attractor_index"] = a;
                        escape.detail["attractor_size"] = mg.sets[a].states.size();
                        escape.detail["from"] = state_json(art.stg_s.space, u);
                        escape.detail["to"] = state_json(art.stg_s.space, v);
                        break;
                    }
                }
                if (found)
                    break;
            }
        }
        escape.pass = found;
    }
    out.push_back(escape);
}

void claims_merge5d(const VerifyArtifacts& art, const CorrespondenceReport& rep,
                    std::vector<Claim>& out) {
    Claim counts{"state-counts"};
    counts.pass = art.stg_s.state_count() == 384 && art.stg_l.state_count() == 5145;
    counts.detail["s_states"] = art.stg_s.state_count();
    counts.detail["l_states"] = art.stg_l.state_count();
    out.push_back(counts);

    Claim merge{"cyclic-sets-merge"};
    {
        const MorseGraph& mg = art.md_s;
        const Network net = builtin_example("MERGE5D").network();
        bool found = false;
        for (int a = 0; a < mg.set_count() && !found; ++a) {
            if (!mg.attractor[a] || mg.sets[a].states.size() < 2)
                continue;
            for (int b = 0; b < mg.set_count(); ++b) {
                if (b == a || mg.attractor[b] || mg.sets[b].states.size() < 2)
                    continue;
                if (mg.reaches(b, a) && rep.morse_map[a] == rep.morse_map[b]) {
                    found = true;
                    merge.detail["attractor_set"] = a;
                    merge.detail["attractor_label"] = morse_label_text(mg.labels[a], net);
                    merge.detail["attractor_size"] = mg.sets[a].states.size();
                    merge.detail["unstable_set"] = b;
                    merge.detail["unstable_label"] = morse_label_text(mg.labels[b], net);
                    merge.detail["unstable_size"] = mg.sets[b].states.size();
                    merge.detail["shared_image"] = rep.morse_map[a];
                    break;
                }
            }
        }
        merge.pass = found;
    }
    out.push_back(merge);

    Claim noninj{"morse-map-not-injective"};
    noninj.pass = !rep.morse_map_injective;
    out.push_back(noninj);
}

void claims_collapse5d(const VerifyArtifacts& art, const CorrespondenceReport& rep,
                       std::vector<Claim>& out) {
    const MorseGraph& mg = art.md_s;

    Claim attrs{"s-attractors-cycle-and-fixed-point"};
    {
        int multi = 0, single = 0, total = 0;
        for (int a = 0; a < mg.set_count(); ++a) {
            if (!mg.attractor[a])
                continue;
            ++total;
            if (mg.sets[a].states.size() > 1 && mg.labels[a].kind == MorseKind::XC)
                ++multi;
            if (mg.sets[a].states.size() == 1)
                ++single;
        }
        attrs.pass = total >= 2 && multi >= 1 && single >= 1;
        attrs.detail["attractors"] = total;
        attrs.detail["multi_state_cycles"] = multi;
        attrs.detail["fixed_points"] = single;
    }
    out.push_back(attrs);

    Claim unique{"l-unique-attractor"};
    {
        int count = 0;
        for (int b = 0; b < art.md_l.set_count(); ++b)
            if (art.md_l.attractor[b])
                ++count;
        unique.pass = count == 1;
        unique.detail["l_attractors"] = count;
    }
    out.push_back(unique);

    Claim collapse{"attractor-map-collapses"};
    {
        std::set<int> images;
        for (auto [a, b] : rep.attr_map) {
            (void)a;
            images.insert(b);
        }
        collapse.pass = rep.attr_map.size() >= 2 && images.size() == 1 &&
                        !rep.attractor_map_injective;
        collapse.detail["preimages"] = rep.attr_map.size();
        collapse.detail["images"] = images.size();
    }
    out.push_back(collapse);
}

}  // namespace

ReproResult run_repro(const std::string& name, int threads) {
    ExampleSpec spec = builtin_example(name);
    Network net = spec.network();

    json report;
    report["schema"] = "repro-report/1";
    report["fixture"] = spec.name;

    bool all_inequalities = true;
    report["inequalities"] = json::array();
    for (const Inequality& iq : spec.inequalities) {
        bool holds = iq.holds(net, spec.sparams);
        all_inequalities = all_inequalities && holds;
        json rec;
        rec["text"] = iq.text();
        rec["holds"] = holds;
        report["inequalities"].push_back(rec);
    }

    VerifyArtifacts art;
    CorrespondenceReport rep = verify_correspondence(net, spec.sparams, threads, &art);

    std::vector<Claim> claims;
    if (name == "SELF")
        claims_self(art, rep, claims);
    else if (name == "TOGGLE")
        claims_toggle(spec, net, art, rep, threads, claims);
    else if (name == "PATH3D")
        claims_path3d(spec, net, art, threads, claims);
    else if (name == "ATTR4D")
        claims_attr4d(art, claims);
    else if (name == "MERGE5D")
        claims_merge5d(art, rep, claims);
    else if (name == "COLLAPSE5D")
        claims_collapse5d(art, rep, claims);

    Claim verify{"verify-all-checks"};
    verify.pass = rep.pass;
    for (const CheckResult& c : rep.checks)
        verify.detail[c.name] = c.pass;
    claims.push_back(verify);

    bool pass = all_inequalities;
    report["claims"] = json::array();
    for (const Claim& c : claims) {
        pass = pass && c.pass;
        json rec;
        rec["name"] = c.name;
        rec["pass"] = c.pass;
        if (!c.detail.empty())
            rec["detail"] = c.detail;
        report["claims"].push_back(rec);
    }
    report["pass"] = pass;

    ReproResult result;
    result.fixture = spec.name;
    result.pass = pass;
    result.json = report.dump(2) + "\n";
    return result;
}

}  // namespace sldyn
