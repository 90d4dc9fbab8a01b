#include "sldyn/corresp.hpp"

#include "sldyn/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>

namespace sldyn {

std::vector<int> embed_state(const std::vector<int>& s_levels) {
    std::vector<int> out(s_levels);
    for (int& v : out)
        v *= 2;
    return out;
}

std::vector<int> restrict_state(const std::vector<int>& l_levels) {
    std::vector<int> out(l_levels);
    for (int& v : out) {
        if (v % 2)
            throw EngineError(EngineError::Code::OddComponent,
                              "bridge state " + format_state(l_levels) +
                                  " has no switching-model counterpart");
        v /= 2;
    }
    return out;
}

namespace {

int odd_count(const std::vector<int>& levels) {
    int n = 0;
    for (int v : levels)
        n += v & 1;
    return n;
}

}  // namespace

std::vector<std::vector<int>> lift_path(const std::vector<std::vector<int>>& path_s,
                                        const TransitionGraph& stg_s,
                                        const TransitionGraph& stg_l) {
    std::vector<std::vector<int>> out;
    if (path_s.empty())
        return out;

    out.push_back(embed_state(path_s[0]));
    for (std::size_t k = 0; k + 1 < path_s.size(); ++k) {
        const std::vector<int>& v = path_s[k];
        const std::vector<int>& w = path_s[k + 1];
        if (!stg_s.has_edge(stg_s.space.rank(v), stg_s.space.rank(w)))
            throw EngineError(EngineError::Code::BadInput,
                              "not an edge: " + format_state(v) + " -> " + format_state(w));

        std::vector<int> ev = embed_state(v);
        std::vector<int> ew = embed_state(w);
        std::vector<int> mid;
        if (v == w) {
            mid = ev;  // a self-loop lifts to two self-loop steps
        } else {
            mid = ev;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != w[i])
                    mid[i] = v[i] + w[i];  // the odd level between 2 v_i and 2 w_i
        }
        int r_ev = stg_l.space.rank(ev);
        int r_mid = stg_l.space.rank(mid);
        int r_ew = stg_l.space.rank(ew);
        if (!stg_l.has_edge(r_ev, r_mid) || !stg_l.has_edge(r_mid, r_ew))
            throw EngineError(EngineError::Code::LiftFailure,
                              "edge " + format_state(v) + " -> " + format_state(w) +
                                  " does not lift through " + format_state(mid));
        out.push_back(std::move(mid));
        out.push_back(std::move(ew));
    }
    return out;
}

std::vector<std::vector<int>> descend_to_constant(const std::vector<int>& w,
                                                  const TransitionGraph& stg_l) {
    std::vector<std::vector<int>> steps;
    std::vector<int> cur = w;
    int remaining = odd_count(cur);
    while (remaining > 0) {
        int r = stg_l.space.rank(cur);
        bool advanced = false;
        for (int next : stg_l.succ[r]) {
            std::vector<int> levels = stg_l.space.unrank(next);
            if (odd_count(levels) == remaining - 1) {
                steps.push_back(levels);
                cur = std::move(levels);
                --remaining;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw EngineError(EngineError::Code::DescentFailure,
                              "no odd-reducing edge out of " + format_state(cur));
    }
    return steps;
}

namespace {

std::vector<char> forward_closure(const TransitionGraph& g, const std::vector<int>& seeds) {
    std::vector<char> seen(g.state_count(), 0);
    std::deque<int> queue;
    for (int s : seeds) {
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.succ[v])
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return seen;
}

}  // namespace

bool has_path(const TransitionGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
    if (a == b)
        return true;
    auto seen = forward_closure(g, {g.space.rank(a)});
    return seen[g.space.rank(b)] != 0;
}

bool has_path_strict(const TransitionGraph& g, const std::vector<int>& a,
                     const std::vector<int>& b) {
    int ra = g.space.rank(a), rb = g.space.rank(b);
    std::vector<int> seeds;
    for (int w : g.succ[ra])
        seeds.push_back(w);
    if (seeds.empty())
        return false;
    auto seen = forward_closure(g, seeds);
    return seen[rb] != 0;
}

std::vector<std::vector<int>> witness_path(const TransitionGraph& g, const std::vector<int>& a,
                                           const std::vector<int>& b) {
    int ra = g.space.rank(a), rb = g.space.rank(b);
    std::vector<int> parent(g.state_count(), -2);
    parent[ra] = -1;
    std::deque<int> queue{ra};
    while (!queue.empty() && parent[rb] == -2) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.succ[v])
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    std::vector<std::vector<int>> path;
    if (parent[rb] == -2)
        return path;
    for (int v = rb; v != -1; v = parent[v])
        path.push_back(g.space.unrank(v));
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> morse_set_map(const MorseGraph& md_s, const MorseGraph& md_l) {
    std::vector<int> map(md_s.set_count(), -1);
    for (int a = 0; a < md_s.set_count(); ++a) {
        int image = -1;
        for (int rank : md_s.sets[a].states) {
            std::vector<int> l_levels = embed_state(md_s.space.unrank(rank));
            int l_rank = md_l.space.rank(l_levels);
            int b = md_l.set_of_state[l_rank];
            if (b < 0)
                throw EngineError(EngineError::Code::SplitImage,
                                  "embedded state " + format_state(l_levels) +
                                      " of Morse set " + std::to_string(a) + " is transient");
            if (image >= 0 && b != image)
                throw EngineError(EngineError::Code::SplitImage,
                                  "Morse set " + std::to_string(a) +
                                      " embeds into two Morse sets (" + std::to_string(image) +
                                      " and " + std::to_string(b) + ")");
            image = b;
        }
        map[a] = image;
    }
    return map;
}

std::vector<std::pair<int, int>> attractor_map(const MorseGraph& md_s,
                                               const TransitionGraph& stg_l,
                                               const MorseGraph& md_l) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < md_s.set_count(); ++a) {
        if (!md_s.attractor[a])
            continue;
        std::vector<int> seeds;
        for (int rank : md_s.sets[a].states)
            seeds.push_back(md_l.space.rank(embed_state(md_s.space.unrank(rank))));
        std::vector<char> closure = forward_closure(stg_l, seeds);

        std::vector<int> terminals;
        for (int b = 0; b < md_l.set_count(); ++b)
            if (md_l.attractor[b] && closure[md_l.sets[b].states[0]])
                terminals.push_back(b);
        if (terminals.size() > 1)
            throw EngineError(EngineError::Code::MultipleTerminal,
                              "forward closure of attractor " + std::to_string(a) + " contains " +
                                  std::to_string(terminals.size()) + " attractors");
        if (terminals.empty())
            throw std::logic_error("forward closure contains no attractor");
        out.emplace_back(a, terminals[0]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// verify_correspondence
// ---------------------------------------------------------------------------

namespace {

// Enumerates every walk with `max_len` >= edges >= 1 from every state and
// feeds it to `fn`; used for exhaustive short-path lifting.
template <typename Fn>
void for_each_walk(const TransitionGraph& g, int max_len, Fn fn) {
    std::vector<int> walk;
    std::function<void(int, int)> extend = [&](int v, int depth) {
        walk.push_back(v);
        if (depth > 0)
            fn(walk);
        if (depth < max_len)
            for (int w : g.succ[v])
                extend(w, depth + 1);
        walk.pop_back();
    };
    for (int v = 0; v < g.state_count(); ++v)
        extend(v, 0);
}

std::vector<std::vector<int>> ranks_to_levels(const TransitionGraph& g,
                                              const std::vector<int>& ranks) {
    std::vector<std::vector<int>> out;
    out.reserve(ranks.size());
    for (int r : ranks)
        out.push_back(g.space.unrank(r));
    return out;
}

}  // namespace

CorrespondenceReport verify_correspondence(const Network& net, const SParams& p, int threads,
                                           VerifyArtifacts* artifacts) {
    CorrespondenceReport report;

    LParams lifted = canonical_lift(net, p);
    TransitionGraph stg_s = build_stg_s(net, p, threads);
    TransitionGraph stg_l = build_stg_l(net, lifted, threads);
    MorseGraph md_s = morse_graph(stg_s);
    MorseGraph md_l = morse_graph(stg_l);

    report.s_state_count = stg_s.state_count();
    report.l_state_count = stg_l.state_count();

    auto check = [&](const std::string& name, bool pass, std::string witness) {
        report.checks.push_back(CheckResult{name, pass, pass ? "" : std::move(witness)});
    };

    // Wall-label graph equals the asynchronous update of the target map.
    {
        TransitionGraph oracle = async_update_oracle(net, discrete_map_s(net, p));
        if (oracle == stg_s) {
            check("async-oracle-equivalence", true, "");
        } else {
            std::string witness = "adjacency differs";
            for (int r = 0; r < stg_s.state_count(); ++r)
                if (stg_s.succ[r] != oracle.succ[r]) {
                    witness = "successors of " + format_state(stg_s.space.unrank(r)) + " differ";
                    break;
                }
            check("async-oracle-equivalence", false, witness);
        }
    }

    // S edge <=> two-step bridge path, over every ordered adjacent pair.
    {
        bool pass = true;
        std::string witness;
        const StateSpace& space = stg_s.space;
        for (int r = 0; r < stg_s.state_count() && pass; ++r) {
            std::vector<int> v = space.unrank(r);
            for (int i = 0; i < net.node_count() && pass; ++i) {
                for (int dir : {+1, -1}) {
                    std::vector<int> w = v;
                    w[i] += dir;
                    if (w[i] < 0 || w[i] >= space.dims[i])
                        continue;
                    bool s_edge = stg_s.has_edge(r, space.rank(w));
                    std::vector<int> ev = embed_state(v);
                    std::vector<int> mid = ev;
                    mid[i] = v[i] + w[i];
                    std::vector<int> ew = embed_state(w);
                    bool l_path = stg_l.has_edge(stg_l.space.rank(ev), stg_l.space.rank(mid)) &&
                                  stg_l.has_edge(stg_l.space.rank(mid), stg_l.space.rank(ew));
                    if (s_edge != l_path) {
                        pass = false;
                        witness = "pair " + format_state(v) + " -> " + format_state(w) +
                                  ": edge " + (s_edge ? "present" : "absent") +
                                  ", bridge path " + (l_path ? "present" : "absent");
                        break;
                    }
                }
            }
        }
        check("edge-lift-biconditional", pass, witness);
    }

    // Lifting of all short paths, plus random longer ones.
    {
        bool pass = true;
        std::string witness;
        try {
            for_each_walk(stg_s, 4, [&](const std::vector<int>& walk) {
                lift_path(ranks_to_levels(stg_s, walk), stg_s, stg_l);
            });
            std::mt19937 rng(1299709);
            for (int trial = 0; trial < 100; ++trial) {
                int len = 5 + static_cast<int>(rng() % 4);
                std::vector<int> walk{static_cast<int>(rng() % stg_s.state_count())};
                for (int k = 0; k < len; ++k) {
                    const auto& succ = stg_s.succ[walk.back()];
                    if (succ.empty())
                        break;
                    walk.push_back(succ[rng() % succ.size()]);
                }
                if (walk.size() > 1)
                    lift_path(ranks_to_levels(stg_s, walk), stg_s, stg_l);
            }
        } catch (const EngineError& e) {
            pass = false;
            witness = e.what();
        }
        check("path-lift", pass, witness);
    }

    // Descent from every bridge state, one odd component per step.
    {
        bool pass = true;
        std::string witness;
        for (int r = 0; r < stg_l.state_count() && pass; ++r) {
            std::vector<int> levels = stg_l.space.unrank(r);
            int odd = odd_count(levels);
            if (odd == 0)
                continue;
            try {
                auto steps = descend_to_constant(levels, stg_l);
                if (static_cast<int>(steps.size()) != odd) {
                    pass = false;
                    witness = "descent from " + format_state(levels) + " took " +
                              std::to_string(steps.size()) + " steps, expected " +
                              std::to_string(odd);
                }
            } catch (const EngineError& e) {
                pass = false;
                witness = e.what();
            }
        }
        check("bridge-descent", pass, witness);
    }

    // Morse-set map: containment in a single L Morse set, then order
    // preservation of the reachability relation.
    bool have_map = false;
    std::vector<int> morse_map;
    {
        bool pass = true;
        std::string witness;
        try {
            morse_map = morse_set_map(md_s, md_l);
            have_map = true;
            for (int a = 0; a < md_s.set_count() && pass; ++a)
                for (int b = 0; b < md_s.set_count(); ++b)
                    if (md_s.reaches(a, b) && !md_l.reaches(morse_map[a], morse_map[b])) {
                        pass = false;
                        witness = "order broken: set " + std::to_string(a) + " reaches " +
                                  std::to_string(b) + " but images do not";
                        break;
                    }
        } catch (const EngineError& e) {
            pass = false;
            witness = e.what();
        }
        check("morse-map-order-preserving", pass, witness);
        report.morse_map = morse_map;
    }

    // Attractor map: total, lands on attractors, and covers every L attractor.
    {
        bool pass = true;
        std::string witness;
        try {
            report.attr_map = attractor_map(md_s, stg_l, md_l);
            std::set<int> image;
            for (auto [a, b] : report.attr_map) {
                (void)a;
                image.insert(b);
            }
            for (int b = 0; b < md_l.set_count(); ++b)
                if (md_l.attractor[b] && !image.count(b)) {
                    pass = false;
                    witness = "attractor " + std::to_string(b) + " is not an image";
                    break;
                }
        } catch (const EngineError& e) {
            pass = false;
            witness = e.what();
        }
        check("attractor-map-surjective", pass, witness);
    }

    // Embedded S fixed points are exactly the L fixed points.
    {
        std::vector<int> s_fp, l_fp;
        for (int a = 0; a < md_s.set_count(); ++a)
            if (md_s.attractor[a] && md_s.sets[a].states.size() == 1)
                s_fp.push_back(
                    md_l.space.rank(embed_state(md_s.space.unrank(md_s.sets[a].states[0]))));
        for (int b = 0; b < md_l.set_count(); ++b)
            if (md_l.attractor[b] && md_l.sets[b].states.size() == 1)
                l_fp.push_back(md_l.sets[b].states[0]);
        std::sort(s_fp.begin(), s_fp.end());
        std::sort(l_fp.begin(), l_fp.end());
        bool pass = s_fp == l_fp;
        check("fixed-point-bijection", pass,
              pass ? ""
                   : "images of fixed points (" + std::to_string(s_fp.size()) +
                         ") and fixed points (" + std::to_string(l_fp.size()) +
                         ") differ");
    }

    // Diagnostic flags; possibilities, not requirements.
    if (have_map) {
        std::set<int> image(morse_map.begin(), morse_map.end());
        report.morse_map_surjective = static_cast<int>(image.size()) == md_l.set_count();
        report.morse_map_injective = static_cast<int>(image.size()) == md_s.set_count();
        if (!report.morse_map_injective) {
            for (int a = 0; a < md_s.set_count(); ++a)
                for (int b = a + 1; b < md_s.set_count(); ++b)
                    if (morse_map[a] == morse_map[b]) {
                        report.morse_map_injective_witness =
                            "sets " + std::to_string(a) + " and " + std::to_string(b) +
                            " share image " + std::to_string(morse_map[a]);
                        a = md_s.set_count();
                        break;
                    }
        }
    }
    {
        std::set<int> image;
        report.attractor_map_injective = true;
        for (auto [a, b] : report.attr_map) {
            if (!image.insert(b).second) {
                report.attractor_map_injective = false;
                report.attractor_map_injective_witness =
                    "attractor image " + std::to_string(b) + " has two preimages";
            }
            (void)a;
        }
    }

    report.pass = true;
    for (const CheckResult& c : report.checks)
        report.pass = report.pass && c.pass;

    if (artifacts) {
        artifacts->lifted = std::move(lifted);
        artifacts->stg_s = std::move(stg_s);
        artifacts->stg_l = std::move(stg_l);
        artifacts->md_s = std::move(md_s);
        artifacts->md_l = std::move(md_l);
    }
    return report;
}

}  // namespace sldyn
