#pragma once

#include "sldyn/network.hpp"
#include "sldyn/rational.hpp"
#include "sldyn/state.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sldyn {

// ---------------------------------------------------------------------------
// Parameter values
// ---------------------------------------------------------------------------

struct SEdgeParams {
    Rational l, u, theta;
    bool operator==(const SEdgeParams&) const = default;
};

struct LEdgeParams {
    Rational l, u, theta_minus, theta_plus;
    bool operator==(const LEdgeParams&) const = default;
};

// Bound parameters, aligned with Network::edges() and node indices.
struct SParams {
    std::vector<Rational> gamma;
    std::vector<SEdgeParams> edge;
    bool operator==(const SParams&) const = default;
};

struct LParams {
    std::vector<Rational> gamma;
    std::vector<LEdgeParams> edge;
    bool operator==(const LParams&) const = default;
};

// Raw parameter file contents, keyed by names as written. Structural
// agreement with a network is checked by validate()/bind(), not at load time.
struct RawEdgeParams {
    std::optional<Rational> l, u, theta, theta_minus, theta_plus;
};

struct RawParams {
    std::map<std::string, Rational> gamma;            // node name -> value
    std::map<std::string, RawEdgeParams> edges;       // "src->tgt" -> values
};

struct Violation {
    std::string code;    // e.g. "missing-gamma", "bounds-order", "focal-on-threshold"
    std::string where;   // node name or "src->tgt"
    std::string detail;
};

// Structural codes are distinct from numeric ones so callers can tell a
// mis-keyed file from a bad value.
bool violation_is_structural(const Violation& v);

// ---------------------------------------------------------------------------
// Validation and binding
// ---------------------------------------------------------------------------

// Checks keys against the network, then positivity / ordering / per-node
// distinctness, then regularity (every focal coordinate off every threshold,
// by exact comparison). Empty result means valid and regular.
std::vector<Violation> validate_s(const Network& net, const RawParams& raw);
std::vector<Violation> validate_l(const Network& net, const RawParams& raw);

// Bound-parameter variants (no structural phase).
std::vector<Violation> validate_s(const Network& net, const SParams& p);
std::vector<Violation> validate_l(const Network& net, const LParams& p);

// True when the raw file carries bridge endpoints (theta_minus/theta_plus)
// rather than single thresholds.
bool raw_params_look_l(const RawParams& raw);

// Binds a raw file to the network. Throws std::invalid_argument listing the
// structural violations when the keys do not match exactly.
SParams bind_s(const Network& net, const RawParams& raw);
LParams bind_l(const Network& net, const RawParams& raw);

RawParams to_raw(const Network& net, const SParams& p);
RawParams to_raw(const Network& net, const LParams& p);

// ---------------------------------------------------------------------------
// Grids and production-rate evaluation
// ---------------------------------------------------------------------------

// Per-node threshold geometry derived from a parameter. `order[i]` lists the
// targets of i ascending by threshold (by interval for L), `edge_rank[e]` is
// the position of edge e's threshold within its source node's order, and
// `points[i]` are the grid values splitting [0,inf) into the node's
// intervals: m_i points for S, 2*m_i points (minus/plus pairs) for L.
struct Grid {
    Model model;
    std::vector<std::vector<Rational>> points;
    std::vector<std::vector<int>> order;
    std::vector<int> edge_rank;
};

// Require distinct thresholds (disjoint intervals for L); call after
// validation has passed.
Grid make_grid(const Network& net, const SParams& p);
Grid make_grid(const Network& net, const LParams& p);

// Threshold order O: per node, targets ascending by threshold.
std::vector<std::vector<int>> threshold_order(const Network& net, const SParams& p);
std::vector<std::vector<int>> threshold_order(const Network& net, const LParams& p);

// Production rates for the domain with the given levels. S levels are state
// levels; for L the levels are constant-interval indices (state level / 2),
// i.e. this evaluates constant domains only.
std::vector<Rational> lambda_of_domain(const Network& net, const SParams& p, const Grid& grid,
                                       const std::vector<int>& levels);
std::vector<Rational> lambda_of_domain(const Network& net, const LParams& p, const Grid& grid,
                                       const std::vector<int>& constant_levels);

// ---------------------------------------------------------------------------
// Discrete target maps and class signatures
// ---------------------------------------------------------------------------

// Target state of every domain, indexed by S state rank; values are S ranks.
std::vector<int> discrete_map_s(const Network& net, const SParams& p);

// Target of every constant domain (domain indexed by S rank, identifying the
// all-even L states with S states); values are ranks in the L state space.
// A value with an odd component means the focal point sits inside a bridge
// interval, which a lifted parameter never produces.
std::vector<int> discrete_map_ln(const Network& net, const LParams& p);

// (O, D) pair defining the parameter's equivalence class. Target tables are
// stored uniformly as L ranks so S and L signatures compare directly.
struct ClassSignature {
    std::vector<std::vector<int>> orders;
    std::vector<int> targets_l;  // indexed by S rank
    bool operator==(const ClassSignature&) const = default;
};

ClassSignature class_signature(const Network& net, const SParams& p);
ClassSignature class_signature(const Network& net, const LParams& p);

inline bool classes_equivalent(const ClassSignature& a, const ClassSignature& b) {
    return a == b;
}

// ---------------------------------------------------------------------------
// Canonical lift
// ---------------------------------------------------------------------------

// L parameter with the same l, u, gamma and bridges of half-width
// delta = g/4 around each threshold, where g is the least of all same-node
// threshold gaps (including the gap to 0) and all focal-to-threshold
// distances. The lift is validated and signature-preserving by construction;
// both are asserted and a std::logic_error is thrown if either fails.
LParams canonical_lift(const Network& net, const SParams& p);

// The g/4 half-width used by canonical_lift; positive for regular input.
Rational lift_half_width(const Network& net, const SParams& p);

}  // namespace sldyn
