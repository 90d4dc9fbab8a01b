#include "sldyn/params.hpp"

#include <algorithm>
#include <stdexcept>

namespace sldyn {

namespace {

std::string edge_key(const Network& net, const Edge& e) {
    return net.name(e.source) + "->" + net.name(e.target);
}

void add(std::vector<Violation>& out, std::string code, std::string where, std::string detail) {
    out.push_back(Violation{std::move(code), std::move(where), std::move(detail)});
}

// Key agreement between the raw file and the network, plus per-edge field
// shape for the requested model.
std::vector<Violation> structural_check(const Network& net, const RawParams& raw, Model model) {
    std::vector<Violation> out;
    for (int i = 0; i < net.node_count(); ++i)
        if (!raw.gamma.count(net.name(i)))
            add(out, "missing-gamma", net.name(i), "no gamma entry for node");
    for (const auto& [name, value] : raw.gamma) {
        (void)value;
        if (!net.index_of(name))
            add(out, "extra-gamma", name, "gamma entry for unknown node");
    }

    for (const Edge& e : net.edges())
        if (!raw.edges.count(edge_key(net, e)))
            add(out, "missing-edge", edge_key(net, e), "no entry for network edge");

    for (const auto& [key, rec] : raw.edges) {
        auto arrow = key.find("->");
        bool known = false;
        if (arrow != std::string::npos) {
            auto src = net.index_of(key.substr(0, arrow));
            auto tgt = net.index_of(key.substr(arrow + 2));
            known = src && tgt && net.edge_index(*src, *tgt).has_value();
        }
        if (!known) {
            add(out, "extra-edge", key, "entry for unknown edge");
            continue;
        }
        if (!rec.l)
            add(out, "missing-value", key, "missing 'l'");
        if (!rec.u)
            add(out, "missing-value", key, "missing 'u'");
        if (model == Model::S) {
            if (!rec.theta)
                add(out, "missing-value", key, "missing 'theta'");
            if (rec.theta_minus || rec.theta_plus)
                add(out, "wrong-kind", key, "bridge endpoints in a switching parameter file");
        } else {
            if (!rec.theta_minus)
                add(out, "missing-value", key, "missing 'theta_minus'");
            if (!rec.theta_plus)
                add(out, "missing-value", key, "missing 'theta_plus'");
            if (rec.theta)
                add(out, "wrong-kind", key, "'theta' in a bridge parameter file");
        }
    }
    return out;
}

template <typename Params>
std::vector<Violation> numeric_common(const Network& net, const Params& p) {
    std::vector<Violation> out;
    for (int i = 0; i < net.node_count(); ++i)
        if (p.gamma[i] <= 0)
            add(out, "gamma-not-positive", net.name(i), "gamma = " + to_string(p.gamma[i]));
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        const std::string key = edge_key(net, net.edges()[e]);
        if (p.edge[e].l <= 0)
            add(out, "value-not-positive", key, "l = " + to_string(p.edge[e].l));
        if (p.edge[e].l >= p.edge[e].u)
            add(out, "bounds-order", key,
                "need l < u, got l = " + to_string(p.edge[e].l) + ", u = " + to_string(p.edge[e].u));
    }
    return out;
}

}  // namespace

bool violation_is_structural(const Violation& v) {
    return v.code == "missing-gamma" || v.code == "extra-gamma" || v.code == "missing-edge" ||
           v.code == "extra-edge" || v.code == "missing-value" || v.code == "wrong-kind";
}

bool raw_params_look_l(const RawParams& raw) {
    for (const auto& [key, rec] : raw.edges) {
        (void)key;
        if (rec.theta_minus || rec.theta_plus)
            return true;
    }
    return false;
}

SParams bind_s(const Network& net, const RawParams& raw) {
    auto structural = structural_check(net, raw, Model::S);
    if (!structural.empty()) {
        std::string msg = "parameter file does not match network:";
        for (const auto& v : structural)
            msg += " [" + v.code + " " + v.where + "]";
        throw std::invalid_argument(msg);
    }
    SParams p;
    p.gamma.reserve(net.node_count());
    for (int i = 0; i < net.node_count(); ++i)
        p.gamma.push_back(raw.gamma.at(net.name(i)));
    for (const Edge& e : net.edges()) {
        const RawEdgeParams& rec = raw.edges.at(edge_key(net, e));
        p.edge.push_back(SEdgeParams{*rec.l, *rec.u, *rec.theta});
    }
    return p;
}

LParams bind_l(const Network& net, const RawParams& raw) {
    auto structural = structural_check(net, raw, Model::L);
    if (!structural.empty()) {
        std::string msg = "parameter file does not match network:";
        for (const auto& v : structural)
            msg += " [" + v.code + " " + v.where + "]";
        throw std::invalid_argument(msg);
    }
    LParams p;
    p.gamma.reserve(net.node_count());
    for (int i = 0; i < net.node_count(); ++i)
        p.gamma.push_back(raw.gamma.at(net.name(i)));
    for (const Edge& e : net.edges()) {
        const RawEdgeParams& rec = raw.edges.at(edge_key(net, e));
        p.edge.push_back(LEdgeParams{*rec.l, *rec.u, *rec.theta_minus, *rec.theta_plus});
    }
    return p;
}

RawParams to_raw(const Network& net, const SParams& p) {
    RawParams raw;
    for (int i = 0; i < net.node_count(); ++i)
        raw.gamma[net.name(i)] = p.gamma[i];
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        RawEdgeParams rec;
        rec.l = p.edge[e].l;
        rec.u = p.edge[e].u;
        rec.theta = p.edge[e].theta;
        raw.edges[edge_key(net, net.edges()[e])] = rec;
    }
    return raw;
}

RawParams to_raw(const Network& net, const LParams& p) {
    RawParams raw;
    for (int i = 0; i < net.node_count(); ++i)
        raw.gamma[net.name(i)] = p.gamma[i];
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        RawEdgeParams rec;
        rec.l = p.edge[e].l;
        rec.u = p.edge[e].u;
        rec.theta_minus = p.edge[e].theta_minus;
        rec.theta_plus = p.edge[e].theta_plus;
        raw.edges[edge_key(net, net.edges()[e])] = rec;
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

namespace {

// Sorts the out-edges of every node by `key` and fills order / ranks;
// `emit_points` appends an edge's grid values in ascending order.
template <typename Params, typename Key, typename EmitPoints>
Grid build_grid(const Network& net, const Params& p, Model model, Key key,
                EmitPoints emit_points) {
    Grid g;
    g.model = model;
    g.points.resize(net.node_count());
    g.order.resize(net.node_count());
    g.edge_rank.assign(net.edges().size(), -1);

    for (int i = 0; i < net.node_count(); ++i) {
        std::vector<int> eidx;
        for (std::size_t e = 0; e < net.edges().size(); ++e)
            if (net.edges()[e].source == i)
                eidx.push_back(static_cast<int>(e));
        std::sort(eidx.begin(), eidx.end(),
                  [&](int a, int b) { return key(p.edge[a]) < key(p.edge[b]); });
        for (std::size_t r = 0; r < eidx.size(); ++r) {
            g.edge_rank[eidx[r]] = static_cast<int>(r);
            g.order[i].push_back(net.edges()[eidx[r]].target);
            emit_points(p.edge[eidx[r]], g.points[i]);
        }
    }
    return g;
}

}  // namespace

Grid make_grid(const Network& net, const SParams& p) {
    return build_grid(
        net, p, Model::S, [](const SEdgeParams& e) { return e.theta; },
        [](const SEdgeParams& e, std::vector<Rational>& pts) { pts.push_back(e.theta); });
}

Grid make_grid(const Network& net, const LParams& p) {
    return build_grid(
        net, p, Model::L, [](const LEdgeParams& e) { return e.theta_minus; },
        [](const LEdgeParams& e, std::vector<Rational>& pts) {
            pts.push_back(e.theta_minus);
            pts.push_back(e.theta_plus);
        });
}

std::vector<std::vector<int>> threshold_order(const Network& net, const SParams& p) {
    return make_grid(net, p).order;
}

std::vector<std::vector<int>> threshold_order(const Network& net, const LParams& p) {
    return make_grid(net, p).order;
}

// ---------------------------------------------------------------------------
// Production rates
// ---------------------------------------------------------------------------

namespace {

// u is transmitted when the source sits on its high side for an activation,
// or on its low side for a repression.
template <typename EdgeParams>
const Rational& sigma_value(const EdgeParams& e, Sign sign, bool high_side) {
    return (high_side == (sign == Sign::Activation)) ? e.u : e.l;
}

template <typename Params>
std::vector<Rational> lambda_impl(const Network& net, const Params& p, const Grid& grid,
                                  const std::vector<int>& levels) {
    std::vector<Rational> lambda(net.node_count());
    for (int j = 0; j < net.node_count(); ++j) {
        Rational product = 1;
        for (const auto& group : net.logic(j).groups) {
            Rational sum = 0;
            for (const Term& t : group) {
                int e = *net.edge_index(t.source, j);
                bool high = levels[t.source] > grid.edge_rank[e];
                sum += sigma_value(p.edge[e], t.sign, high);
            }
            product *= sum;
        }
        lambda[j] = product;
    }
    return lambda;
}

}  // namespace

std::vector<Rational> lambda_of_domain(const Network& net, const SParams& p, const Grid& grid,
                                       const std::vector<int>& levels) {
    return lambda_impl(net, p, grid, levels);
}

std::vector<Rational> lambda_of_domain(const Network& net, const LParams& p, const Grid& grid,
                                       const std::vector<int>& constant_levels) {
    return lambda_impl(net, p, grid, constant_levels);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

// Walks all constant domains and reports focal coordinates that hit a grid
// point of their own node.
template <typename Params>
void regularity_check(const Network& net, const Params& p, const Grid& grid,
                      std::vector<Violation>& out) {
    StateSpace space = StateSpace::for_model(net, Model::S);
    const long long n = space.count();
    for (long long r = 0; r < n; ++r) {
        std::vector<int> levels = space.unrank(static_cast<int>(r));
        std::vector<Rational> lambda = lambda_impl(net, p, grid, levels);
        for (int i = 0; i < net.node_count(); ++i) {
            Rational focal = lambda[i] / p.gamma[i];
            for (std::size_t k = 0; k < grid.points[i].size(); ++k) {
                if (focal == grid.points[i][k]) {
                    int target = grid.order[i][grid.model == Model::S ? k : k / 2];
                    out.push_back(Violation{
                        "focal-on-threshold", net.name(i),
                        "focal coordinate " + to_string(focal) + " of domain " +
                            format_state(levels) + " hits threshold of edge " + net.name(i) +
                            "->" + net.name(target)});
                }
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate_s(const Network& net, const SParams& p) {
    std::vector<Violation> out = numeric_common(net, p);
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        const std::string key = edge_key(net, net.edges()[e]);
        if (p.edge[e].theta <= 0)
            add(out, "theta-not-positive", key, "theta = " + to_string(p.edge[e].theta));
    }
    for (int i = 0; i < net.node_count(); ++i) {
        const auto& tgts = net.targets(i);
        for (std::size_t a = 0; a < tgts.size(); ++a)
            for (std::size_t b = a + 1; b < tgts.size(); ++b) {
                const Rational& ta = p.edge[*net.edge_index(i, tgts[a])].theta;
                const Rational& tb = p.edge[*net.edge_index(i, tgts[b])].theta;
                if (ta == tb)
                    add(out, "duplicate-theta", net.name(i),
                        "thresholds of " + net.name(i) + "->" + net.name(tgts[a]) + " and " +
                            net.name(i) + "->" + net.name(tgts[b]) + " coincide");
            }
    }
    if (out.empty())
        regularity_check(net, p, make_grid(net, p), out);
    return out;
}

std::vector<Violation> validate_l(const Network& net, const LParams& p) {
    std::vector<Violation> out = numeric_common(net, p);
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        const std::string key = edge_key(net, net.edges()[e]);
        if (p.edge[e].theta_minus <= 0)
            add(out, "theta-not-positive", key,
                "theta_minus = " + to_string(p.edge[e].theta_minus));
        if (p.edge[e].theta_minus >= p.edge[e].theta_plus)
            add(out, "interval-order", key,
                "need theta_minus < theta_plus, got [" + to_string(p.edge[e].theta_minus) + "," +
                    to_string(p.edge[e].theta_plus) + "]");
    }
    for (int i = 0; i < net.node_count(); ++i) {
        const auto& tgts = net.targets(i);
        for (std::size_t a = 0; a < tgts.size(); ++a)
            for (std::size_t b = a + 1; b < tgts.size(); ++b) {
                const LEdgeParams& ea = p.edge[*net.edge_index(i, tgts[a])];
                const LEdgeParams& eb = p.edge[*net.edge_index(i, tgts[b])];
                bool disjoint = ea.theta_plus < eb.theta_minus || eb.theta_plus < ea.theta_minus;
                if (!disjoint)
                    add(out, "interval-overlap", net.name(i),
                        "bridge intervals of " + net.name(i) + "->" + net.name(tgts[a]) + " and " +
                            net.name(i) + "->" + net.name(tgts[b]) + " intersect");
            }
    }
    if (out.empty())
        regularity_check(net, p, make_grid(net, p), out);
    return out;
}

std::vector<Violation> validate_s(const Network& net, const RawParams& raw) {
    std::vector<Violation> out = structural_check(net, raw, Model::S);
    if (!out.empty())
        return out;
    return validate_s(net, bind_s(net, raw));
}

std::vector<Violation> validate_l(const Network& net, const RawParams& raw) {
    std::vector<Violation> out = structural_check(net, raw, Model::L);
    if (!out.empty())
        return out;
    return validate_l(net, bind_l(net, raw));
}

// ---------------------------------------------------------------------------
// Discrete target maps and signatures
// ---------------------------------------------------------------------------

namespace {

// Number of grid points strictly below f; a regular parameter never places
// f on a grid point.
int grid_level(const std::vector<Rational>& points, const Rational& f) {
    int level = 0;
    for (const Rational& t : points) {
        if (f == t)
            throw std::invalid_argument("non-regular parameter: focal coordinate on a threshold");
        if (t < f)
            ++level;
    }
    return level;
}

}  // namespace

std::vector<int> discrete_map_s(const Network& net, const SParams& p) {
    Grid grid = make_grid(net, p);
    StateSpace space = StateSpace::for_model(net, Model::S);
    std::vector<int> table(space.count());
    for (int r = 0; r < static_cast<int>(table.size()); ++r) {
        std::vector<int> levels = space.unrank(r);
        std::vector<Rational> lambda = lambda_impl(net, p, grid, levels);
        std::vector<int> target(net.node_count());
        for (int i = 0; i < net.node_count(); ++i)
            target[i] = grid_level(grid.points[i], lambda[i] / p.gamma[i]);
        table[r] = space.rank(target);
    }
    return table;
}

std::vector<int> discrete_map_ln(const Network& net, const LParams& p) {
    Grid grid = make_grid(net, p);
    StateSpace constant_space = StateSpace::for_model(net, Model::S);
    StateSpace l_space = StateSpace::for_model(net, Model::L);
    std::vector<int> table(constant_space.count());
    for (int r = 0; r < static_cast<int>(table.size()); ++r) {
        std::vector<int> levels = constant_space.unrank(r);
        std::vector<Rational> lambda = lambda_impl(net, p, grid, levels);
        std::vector<int> target(net.node_count());
        for (int i = 0; i < net.node_count(); ++i)
            target[i] = grid_level(grid.points[i], lambda[i] / p.gamma[i]);
        table[r] = l_space.rank(target);
    }
    return table;
}

ClassSignature class_signature(const Network& net, const SParams& p) {
    ClassSignature sig;
    sig.orders = threshold_order(net, p);
    StateSpace s_space = StateSpace::for_model(net, Model::S);
    StateSpace l_space = StateSpace::for_model(net, Model::L);
    std::vector<int> table = discrete_map_s(net, p);
    sig.targets_l.reserve(table.size());
    for (int t : table) {
        std::vector<int> levels = s_space.unrank(t);
        for (int& v : levels)
            v *= 2;
        sig.targets_l.push_back(l_space.rank(levels));
    }
    return sig;
}

ClassSignature class_signature(const Network& net, const LParams& p) {
    ClassSignature sig;
    sig.orders = threshold_order(net, p);
    sig.targets_l = discrete_map_ln(net, p);
    return sig;
}

// ---------------------------------------------------------------------------
// Canonical lift
// ---------------------------------------------------------------------------

Rational lift_half_width(const Network& net, const SParams& p) {
    Grid grid = make_grid(net, p);

    std::optional<Rational> g;
    auto consider = [&](const Rational& v) {
        if (!g || v < *g)
            g = v;
    };

    for (int i = 0; i < net.node_count(); ++i) {
        Rational prev = 0;
        for (const Rational& t : grid.points[i]) {
            consider(t - prev);
            prev = t;
        }
    }

    StateSpace space = StateSpace::for_model(net, Model::S);
    const long long n = space.count();
    for (long long r = 0; r < n; ++r) {
        std::vector<int> levels = space.unrank(static_cast<int>(r));
        std::vector<Rational> lambda = lambda_impl(net, p, grid, levels);
        for (int i = 0; i < net.node_count(); ++i) {
            Rational focal = lambda[i] / p.gamma[i];
            for (const Rational& t : grid.points[i])
                consider(focal > t ? focal - t : t - focal);
        }
    }

    if (!g || *g <= 0)
        throw std::invalid_argument("non-regular parameter: zero gap");
    return *g / 4;
}

LParams canonical_lift(const Network& net, const SParams& p) {
    Rational delta = lift_half_width(net, p);
    LParams lifted;
    lifted.gamma = p.gamma;
    lifted.edge.reserve(p.edge.size());
    for (const SEdgeParams& e : p.edge)
        lifted.edge.push_back(LEdgeParams{e.l, e.u, e.theta - delta, e.theta + delta});

    if (!validate_l(net, lifted).empty())
        throw std::logic_error("canonical lift produced an invalid parameter");
    if (!(class_signature(net, lifted) == class_signature(net, p)))
        throw std::logic_error("canonical lift changed the class signature");
    return lifted;
}

}  // namespace sldyn
