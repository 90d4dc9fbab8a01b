#include "sldyn/morse.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace sldyn {

namespace {

// Iterative Tarjan. Components come out in reverse topological order of the
// condensation (every successor component precedes its predecessors).
std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& g) {
    const int n = g.state_count();
    std::vector<int> number(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_number = 0;

    struct Frame {
        int v;
        std::size_t next_child;
    };
    std::vector<Frame> frames;

    for (int root = 0; root < n; ++root) {
        if (number[root] != -1)
            continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            int v = f.v;
            if (f.next_child == 0) {
                number[v] = low[v] = next_number++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (f.next_child < g.succ[v].size()) {
                int w = g.succ[v][f.next_child++];
                if (number[w] == -1) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w])
                    low[v] = std::min(low[v], number[w]);
            }
            if (descended)
                continue;
            if (low[v] == number[v]) {
                std::vector<int> comp;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                    if (w == v)
                        break;
                }
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            frames.pop_back();
            if (!frames.empty()) {
                Frame& parent = frames.back();
                low[parent.v] = std::min(low[parent.v], low[v]);
            }
        }
    }
    return comps;
}

bool component_is_recurrent(const TransitionGraph& g, const std::vector<int>& comp) {
    if (comp.size() > 1)
        return true;
    return g.has_edge(comp[0], comp[0]);
}

}  // namespace

std::vector<MorseSet> recurrent_components(const TransitionGraph& g) {
    std::vector<std::vector<int>> comps = strongly_connected_components(g);
    std::vector<MorseSet> out;
    for (auto& comp : comps)
        if (component_is_recurrent(g, comp))
            out.push_back(MorseSet{std::move(comp), -1});
    std::sort(out.begin(), out.end(),
              [](const MorseSet& a, const MorseSet& b) { return a.states[0] < b.states[0]; });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].index = static_cast<int>(i);
    return out;
}

MorseLabel classify(const MorseSet& ms, const StateSpace& space) {
    MorseLabel label;
    if (ms.states.size() == 1) {
        label.kind = MorseKind::FP;
        return label;
    }
    const int n = space.node_count();
    std::vector<int> lo = space.unrank(ms.states[0]);
    std::vector<int> hi = lo;
    for (int r : ms.states) {
        std::vector<int> levels = space.unrank(r);
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], levels[i]);
            hi[i] = std::max(hi[i], levels[i]);
        }
    }
    for (int i = 0; i < n; ++i)
        if (lo[i] != hi[i])
            label.varying.push_back(i);
    label.kind = static_cast<int>(label.varying.size()) == n ? MorseKind::FC : MorseKind::XC;
    return label;
}

std::string morse_label_text(const MorseLabel& label, const Network& net) {
    switch (label.kind) {
        case MorseKind::FP: return "FP";
        case MorseKind::FC: return "FC";
        case MorseKind::XC: {
            std::string s = "XC{";
            for (std::size_t i = 0; i < label.varying.size(); ++i) {
                if (i)
                    s += ',';
                s += net.name(label.varying[i]);
            }
            s += '}';
            return s;
        }
    }
    return "?";
}

MorseGraph morse_graph(const TransitionGraph& g) {
    MorseGraph mg;
    mg.space = g.space;

    // Reachability closure over the full condensation; components come out
    // successors-first, so one sweep in emission order accumulates it.
    std::vector<std::vector<int>> comps = strongly_connected_components(g);
    const int n = g.state_count();
    const int nc = static_cast<int>(comps.size());
    std::vector<int> comp_of(n, -1);
    for (int c = 0; c < nc; ++c)
        for (int v : comps[c])
            comp_of[v] = c;

    const int words = (nc + 63) / 64;
    std::vector<std::uint64_t> comp_reach(static_cast<std::size_t>(nc) * words, 0);
    auto row = [&](int c) { return comp_reach.data() + static_cast<std::size_t>(c) * words; };
    auto test = [&](int a, int b) { return (row(a)[b >> 6] >> (b & 63)) & 1; };
    for (int c = 0; c < nc; ++c) {  // successors have smaller component ids
        std::uint64_t* rc = row(c);
        rc[c >> 6] |= std::uint64_t{1} << (c & 63);
        for (int v : comps[c])
            for (int w : g.succ[v]) {
                int cw = comp_of[w];
                if (cw == c)
                    continue;
                const std::uint64_t* rw = row(cw);
                for (int k = 0; k < words; ++k)
                    rc[k] |= rw[k];
            }
    }

    mg.sets = recurrent_components(g);
    const int k = mg.set_count();
    mg.labels.reserve(k);
    for (const MorseSet& ms : mg.sets)
        mg.labels.push_back(classify(ms, g.space));

    mg.set_of_state.assign(n, -1);
    for (const MorseSet& ms : mg.sets)
        for (int v : ms.states)
            mg.set_of_state[v] = ms.index;

    mg.reach.assign(k, std::vector<bool>(k, false));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            mg.reach[a][b] =
                test(comp_of[mg.sets[a].states[0]], comp_of[mg.sets[b].states[0]]) != 0;

    // Hasse edges: transitive reduction of the strict order (unique on a DAG).
    mg.down.assign(k, {});
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (a == b || !mg.reach[a][b])
                continue;
            bool direct = true;
            for (int c = 0; c < k && direct; ++c)
                if (c != a && c != b && mg.reach[a][c] && mg.reach[c][b])
                    direct = false;
            if (direct)
                mg.down[a].push_back(b);
        }

    mg.attractor.assign(k, false);
    for (int a = 0; a < k; ++a) {
        bool minimal = true;
        for (int b = 0; b < k; ++b)
            if (b != a && mg.reach[a][b])
                minimal = false;
        mg.attractor[a] = minimal;
    }
    return mg;
}

std::vector<int> attractors(const MorseGraph& mg, const TransitionGraph& g) {
    std::vector<int> out;
    for (int a = 0; a < mg.set_count(); ++a)
        if (mg.attractor[a])
            out.push_back(a);

    // Forward invariance: no edge leaves an attractor's state set.
    for (int a : out)
        for (int v : mg.sets[a].states)
            for (int w : g.succ[v])
                if (mg.set_of_state[w] != a)
                    throw std::logic_error("edge leaves an attractor");

    // Coverage: every state reaches some attractor.
    const int n = g.state_count();
    std::vector<char> hits(n, 0);
    std::vector<int> queue;
    for (int a : out)
        for (int v : mg.sets[a].states) {
            hits[v] = 1;
            queue.push_back(v);
        }
    std::vector<std::vector<int>> pred(n);
    for (int v = 0; v < n; ++v)
        for (int w : g.succ[v])
            pred[w].push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int u : pred[v])
            if (!hits[u]) {
                hits[u] = 1;
                queue.push_back(u);
            }
    }
    for (int v = 0; v < n; ++v)
        if (!hits[v])
            throw std::logic_error("state " + format_state(g.space.unrank(v)) +
                                   " reaches no attractor");
    return out;
}

}  // namespace sldyn
