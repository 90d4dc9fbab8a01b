#pragma once

#include "sldyn/params.hpp"
#include "sldyn/state.hpp"

#include <optional>
#include <vector>

namespace sldyn {

// ---------------------------------------------------------------------------
// Cells, walls
// ---------------------------------------------------------------------------

// Rectangular cell: per-coordinate closed interval with rational endpoints;
// an absent upper bound means the interval runs to infinity, lo == hi marks a
// degenerate coordinate.
struct Cell {
    std::vector<Rational> lo;
    std::vector<std::optional<Rational>> hi;

    bool degenerate(int i) const { return hi[i].has_value() && lo[i] == *hi[i]; }
};

enum class WallSide { Left, Right };

// A face of a domain together with its owner, identified by the owner's
// state levels, the projection coordinate and the side the face sits on.
struct Wall {
    std::vector<int> owner;
    int coord = 0;
    WallSide side = WallSide::Left;
};

inline int wall_sign(WallSide side) { return side == WallSide::Left ? 1 : -1; }

// Geometric realization of the domain with the given state levels.
Cell domain_cell(const Grid& grid, const std::vector<int>& levels);

// Geometric realization of a wall's face. Throws EngineError::BadInput for a
// right face on an unbounded coordinate.
Cell wall_face(const Grid& grid, const Wall& wall);

// ---------------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------------

// Production rates at a rational point. Coordinates may sit exactly on
// bridge endpoints (the constant branch applies there); a coordinate
// strictly inside a bridge interval raises EngineError::BridgeInterior, and
// for the S model a coordinate exactly on a threshold raises
// EngineError::BadInput.
std::vector<Rational> lambda_at(const Network& net, const SParams& p,
                                const std::vector<Rational>& point);
std::vector<Rational> lambda_at(const Network& net, const LParams& p,
                                const std::vector<Rational>& point);

// ---------------------------------------------------------------------------
// Wall labels
// ---------------------------------------------------------------------------

// -1 absorbing, +1 entrance (S walls never label 0).
int wall_label_s(const Network& net, const SParams& p, const Wall& wall);

// Sign of the k-th flow component over the corner points of an L-grid cell:
// +1 / -1 when every corner agrees, 0 when corners disagree. Coordinates
// with an unbounded upper end contribute only their finite endpoint to the
// corner set. Raises EngineError::ZeroAtCorner for a non-regular parameter.
int sgn_corner(const Network& net, const LParams& p, const Cell& face, int k);

// -1 absorbing, +1 entrance, 0 bidirectional.
int wall_label_l(const Network& net, const LParams& p, const Wall& wall);

// ---------------------------------------------------------------------------
// Transition graphs
// ---------------------------------------------------------------------------

struct TransitionGraph {
    Model model = Model::S;
    StateSpace space;
    std::vector<std::vector<int>> succ;  // sorted successor ranks, self-loops allowed

    int state_count() const { return static_cast<int>(succ.size()); }
    long long edge_count() const {
        long long n = 0;
        for (const auto& s : succ)
            n += static_cast<long long>(s.size());
        return n;
    }
    bool has_edge(int from, int to) const {
        const auto& s = succ[from];
        return std::binary_search(s.begin(), s.end(), to);
    }
    bool operator==(const TransitionGraph& other) const {
        return model == other.model && space.dims == other.space.dims && succ == other.succ;
    }
};

// All states of a model in rank (lexicographic) order.
std::vector<std::vector<int>> enumerate_states(const Network& net, Model model);

// State transition graph of the switching model: self-loop on every
// attracting domain, and an edge across every shared face that is absorbing
// on one side and entrance on the other.
TransitionGraph build_stg_s(const Network& net, const SParams& p, int threads = 1);

// State transition graph of the bridge model: self-loops only on attracting
// constant domains, absorbing->entrance edges, and a pair of edges across
// every bidirectional wall.
TransitionGraph build_stg_l(const Network& net, const LParams& p, int threads = 1);

// Asynchronous update rule of a discrete target map, built purely from the
// table; the independent oracle for the wall-label construction.
TransitionGraph async_update_oracle(const Network& net, const std::vector<int>& target_table);

}  // namespace sldyn
