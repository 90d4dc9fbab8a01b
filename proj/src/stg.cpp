#include "sldyn/stg.hpp"

#include "sldyn/errors.hpp"
#include "sldyn/parallel.hpp"

#include <algorithm>

namespace sldyn {

// ---------------------------------------------------------------------------
// Cells
// ---------------------------------------------------------------------------

Cell domain_cell(const Grid& grid, const std::vector<int>& levels) {
    Cell cell;
    const int n = static_cast<int>(grid.points.size());
    cell.lo.resize(n);
    cell.hi.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& pts = grid.points[i];
        const int level = levels[i];
        cell.lo[i] = level > 0 ? pts[level - 1] : Rational(0);
        if (level < static_cast<int>(pts.size()))
            cell.hi[i] = pts[level];
        else
            cell.hi[i] = std::nullopt;
    }
    return cell;
}

Cell wall_face(const Grid& grid, const Wall& wall) {
    Cell cell = domain_cell(grid, wall.owner);
    if (wall.side == WallSide::Left) {
        cell.hi[wall.coord] = cell.lo[wall.coord];
    } else {
        if (!cell.hi[wall.coord])
            throw EngineError(EngineError::Code::BadInput,
                              "unbounded coordinate has no right face");
        cell.lo[wall.coord] = *cell.hi[wall.coord];
    }
    return cell;
}

// ---------------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------------

namespace {

// Side of source value x for one edge; true = high (above the threshold /
// bridge). Bridge endpoints take the adjacent constant branch.
bool high_side_s(const SEdgeParams& e, const Rational& x) {
    if (x == e.theta)
        throw EngineError(EngineError::Code::BadInput,
                          "switching-model evaluation exactly on a threshold");
    return x > e.theta;
}

bool high_side_l(const LEdgeParams& e, const Rational& x) {
    if (x <= e.theta_minus)
        return false;
    if (x >= e.theta_plus)
        return true;
    throw EngineError(EngineError::Code::BridgeInterior,
                      "coordinate " + to_string(x) + " lies strictly inside a bridge interval");
}

template <typename Params, typename HighSide>
Rational lambda_coord_at(const Network& net, const Params& p, const std::vector<Rational>& point,
                         int j, HighSide high_side) {
    Rational product = 1;
    for (const auto& group : net.logic(j).groups) {
        Rational sum = 0;
        for (const Term& t : group) {
            int e = *net.edge_index(t.source, j);
            bool high = high_side(p.edge[e], point[t.source]);
            bool is_u = (high == (t.sign == Sign::Activation));
            sum += is_u ? p.edge[e].u : p.edge[e].l;
        }
        product *= sum;
    }
    return product;
}

template <typename Params, typename HighSide>
std::vector<Rational> lambda_at_impl(const Network& net, const Params& p,
                                     const std::vector<Rational>& point, HighSide high_side) {
    if (static_cast<int>(point.size()) != net.node_count())
        throw EngineError(EngineError::Code::BadInput, "point dimension mismatch");
    std::vector<Rational> lambda(net.node_count());
    for (int j = 0; j < net.node_count(); ++j)
        lambda[j] = lambda_coord_at(net, p, point, j, high_side);
    return lambda;
}

}  // namespace

std::vector<Rational> lambda_at(const Network& net, const SParams& p,
                                const std::vector<Rational>& point) {
    return lambda_at_impl(net, p, point, high_side_s);
}

std::vector<Rational> lambda_at(const Network& net, const LParams& p,
                                const std::vector<Rational>& point) {
    return lambda_at_impl(net, p, point, high_side_l);
}

// ---------------------------------------------------------------------------
// Wall labels
// ---------------------------------------------------------------------------

int wall_label_s(const Network& net, const SParams& p, const Wall& wall) {
    Grid grid = make_grid(net, p);
    StateSpace space = StateSpace::for_model(net, Model::S);
    if (!space.contains(wall.owner))
        throw EngineError(EngineError::Code::BadInput, "wall owner outside the state space");

    Cell face = wall_face(grid, wall);
    const Rational& threshold = face.lo[wall.coord];
    std::vector<Rational> lambda = lambda_of_domain(net, p, grid, wall.owner);
    Rational diff = lambda[wall.coord] / p.gamma[wall.coord] - threshold;
    if (diff == 0)
        throw EngineError(EngineError::Code::ZeroAtCorner,
                          "focal coordinate on a threshold (non-regular parameter)");
    return wall_sign(wall.side) * (diff > 0 ? 1 : -1);
}

namespace {

int sgn_corner_impl(const Network& net, const LParams& p, const Cell& face, int k) {
    const int n = static_cast<int>(face.lo.size());

    // Coordinates contributing two corner values; unbounded ones contribute
    // only their finite endpoint (the rates are constant beyond it).
    std::vector<int> spread;
    for (int i = 0; i < n; ++i)
        if (face.hi[i] && !(face.lo[i] == *face.hi[i]))
            spread.push_back(i);

    const Rational& level_value = face.lo[k];
    bool any_pos = false, any_neg = false;
    std::vector<Rational> point(face.lo);

    const std::size_t corners = std::size_t{1} << spread.size();
    for (std::size_t mask = 0; mask < corners; ++mask) {
        for (std::size_t b = 0; b < spread.size(); ++b)
            point[spread[b]] = (mask >> b) & 1 ? *face.hi[spread[b]] : face.lo[spread[b]];
        Rational diff = lambda_coord_at(net, p, point, k, high_side_l) / p.gamma[k] - level_value;
        if (diff == 0)
            throw EngineError(EngineError::Code::ZeroAtCorner,
                              "flow component vanishes at a corner point (non-regular parameter)");
        (diff > 0 ? any_pos : any_neg) = true;
    }
    if (any_pos && any_neg)
        return 0;
    return any_pos ? 1 : -1;
}

}  // namespace

int sgn_corner(const Network& net, const LParams& p, const Cell& face, int k) {
    return sgn_corner_impl(net, p, face, k);
}

int wall_label_l(const Network& net, const LParams& p, const Wall& wall) {
    Grid grid = make_grid(net, p);
    StateSpace space = StateSpace::for_model(net, Model::L);
    if (!space.contains(wall.owner))
        throw EngineError(EngineError::Code::BadInput, "wall owner outside the state space");
    Cell face = wall_face(grid, wall);
    return wall_sign(wall.side) * sgn_corner_impl(net, p, face, wall.coord);
}

// ---------------------------------------------------------------------------
// Transition graphs
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> enumerate_states(const Network& net, Model model) {
    StateSpace space = StateSpace::for_model(net, model);
    std::vector<std::vector<int>> out;
    out.reserve(space.count());
    for (int r = 0; r < space.count(); ++r)
        out.push_back(space.unrank(r));
    return out;
}

TransitionGraph build_stg_s(const Network& net, const SParams& p, int threads) {
    Grid grid = make_grid(net, p);
    StateSpace space = StateSpace::for_model(net, Model::S);
    const int count = static_cast<int>(space.count());
    const int n = net.node_count();

    // Focal coordinates of every domain, then edges per state slot.
    std::vector<std::vector<Rational>> focal(count);
    parallel_for(count, threads, [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            std::vector<Rational> lambda = lambda_of_domain(net, p, grid, space.unrank(r));
            focal[r].reserve(n);
            for (int i = 0; i < n; ++i)
                focal[r].push_back(lambda[i] / p.gamma[i]);
        }
    });

    TransitionGraph g;
    g.model = Model::S;
    g.space = space;
    g.succ.resize(count);

    parallel_for(count, threads, [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            const std::vector<int> levels = space.unrank(r);
            bool attracting = true;
            for (int i = 0; i < n && attracting; ++i) {
                const auto& pts = grid.points[i];
                const Rational& f = focal[r][i];
                if (levels[i] > 0 && f < pts[levels[i] - 1])
                    attracting = false;
                if (levels[i] < static_cast<int>(pts.size()) && f > pts[levels[i]])
                    attracting = false;
            }
            std::vector<int>& out = g.succ[r];
            if (attracting)
                out.push_back(r);
            for (int i = 0; i < n; ++i) {
                int stride = 1;
                for (int j = i + 1; j < n; ++j)
                    stride *= space.dims[j];
                if (levels[i] + 1 < space.dims[i]) {
                    const Rational& t = grid.points[i][levels[i]];
                    if (focal[r][i] > t && focal[r + stride][i] > t)
                        out.push_back(r + stride);
                }
                if (levels[i] > 0) {
                    const Rational& t = grid.points[i][levels[i] - 1];
                    if (focal[r][i] < t && focal[r - stride][i] < t)
                        out.push_back(r - stride);
                }
            }
            std::sort(out.begin(), out.end());
        }
    });
    return g;
}

TransitionGraph build_stg_l(const Network& net, const LParams& p, int threads) {
    Grid grid = make_grid(net, p);
    StateSpace space = StateSpace::for_model(net, Model::L);
    const int count = static_cast<int>(space.count());
    const int n = net.node_count();

    TransitionGraph g;
    g.model = Model::L;
    g.space = space;
    g.succ.resize(count);

    parallel_for(count, threads, [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            const std::vector<int> levels = space.unrank(r);
            std::vector<int>& out = g.succ[r];

            bool constant_domain = true;
            for (int i = 0; i < n; ++i)
                if (levels[i] % 2)
                    constant_domain = false;
            if (constant_domain) {
                std::vector<int> ci(n);
                for (int i = 0; i < n; ++i)
                    ci[i] = levels[i] / 2;
                std::vector<Rational> lambda = lambda_of_domain(net, p, grid, ci);
                bool attracting = true;
                for (int i = 0; i < n && attracting; ++i) {
                    const auto& pts = grid.points[i];
                    Rational f = lambda[i] / p.gamma[i];
                    if (levels[i] > 0 && f < pts[levels[i] - 1])
                        attracting = false;
                    if (levels[i] < static_cast<int>(pts.size()) && f > pts[levels[i]])
                        attracting = false;
                }
                if (attracting)
                    out.push_back(r);
            }

            Cell cell = domain_cell(grid, levels);
            for (int i = 0; i < n; ++i) {
                int stride = 1;
                for (int j = i + 1; j < n; ++j)
                    stride *= space.dims[j];
                if (levels[i] + 1 < space.dims[i]) {
                    Cell face = cell;
                    face.lo[i] = *cell.hi[i];
                    int s = sgn_corner_impl(net, p, face, i);
                    if (s >= 0)  // absorbing for this owner, or bidirectional
                        out.push_back(r + stride);
                }
                if (levels[i] > 0) {
                    Cell face = cell;
                    face.hi[i] = cell.lo[i];
                    int s = sgn_corner_impl(net, p, face, i);
                    if (s <= 0)
                        out.push_back(r - stride);
                }
            }
            std::sort(out.begin(), out.end());
        }
    });
    return g;
}

TransitionGraph async_update_oracle(const Network& net, const std::vector<int>& target_table) {
    StateSpace space = StateSpace::for_model(net, Model::S);
    const int count = static_cast<int>(space.count());
    if (static_cast<int>(target_table.size()) != count)
        throw EngineError(EngineError::Code::BadInput, "target table does not cover the state space");

    TransitionGraph g;
    g.model = Model::S;
    g.space = space;
    g.succ.resize(count);
    for (int r = 0; r < count; ++r) {
        const int t = target_table[r];
        std::vector<int>& out = g.succ[r];
        if (t == r) {
            out.push_back(r);
            continue;
        }
        const std::vector<int> s_levels = space.unrank(r);
        const std::vector<int> t_levels = space.unrank(t);
        int stride = count;
        for (int i = 0; i < net.node_count(); ++i) {
            stride /= space.dims[i];
            if (t_levels[i] > s_levels[i])
                out.push_back(r + stride);
            else if (t_levels[i] < s_levels[i])
                out.push_back(r - stride);
        }
        std::sort(out.begin(), out.end());
    }
    return g;
}

}  // namespace sldyn
