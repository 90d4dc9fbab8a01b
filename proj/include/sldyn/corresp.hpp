#pragma once

#include "sldyn/morse.hpp"
#include "sldyn/params.hpp"
#include "sldyn/stg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sldyn {

// ---------------------------------------------------------------------------
// State embedding
// ---------------------------------------------------------------------------

// S state -> the all-even L state over the same constant domain.
std::vector<int> embed_state(const std::vector<int>& s_levels);

// Inverse of embed_state; raises EngineError::OddComponent on bridge states.
std::vector<int> restrict_state(const std::vector<int>& l_levels);

// ---------------------------------------------------------------------------
// Path lifting and descent
// ---------------------------------------------------------------------------

// Lifts an S path (vertex list) to the L graph by inserting the unique
// bridge state between consecutive images. The result has twice as many
// edges; every inserted edge is checked against stg_l and a missing one
// raises EngineError::LiftFailure naming the offending S edge.
std::vector<std::vector<int>> lift_path(const std::vector<std::vector<int>>& path_s,
                                        const TransitionGraph& stg_s,
                                        const TransitionGraph& stg_l);

// Steps from `w` to an all-even state, each reducing the number of odd
// components by exactly one; returns the visited states after `w` (empty for
// an all-even input). Raises EngineError::DescentFailure if stuck.
std::vector<std::vector<int>> descend_to_constant(const std::vector<int>& w,
                                                  const TransitionGraph& stg_l);

// ---------------------------------------------------------------------------
// Reachability
// ---------------------------------------------------------------------------

// Directed path a -> b; has_path(g, a, a) is true by convention, the strict
// variant requires a nonempty path.
bool has_path(const TransitionGraph& g, const std::vector<int>& a, const std::vector<int>& b);
bool has_path_strict(const TransitionGraph& g, const std::vector<int>& a,
                     const std::vector<int>& b);

// Shortest witness path a -> b as a vertex list (empty when unreachable;
// [a] when a == b).
std::vector<std::vector<int>> witness_path(const TransitionGraph& g, const std::vector<int>& a,
                                           const std::vector<int>& b);

// ---------------------------------------------------------------------------
// Morse-graph correspondences
// ---------------------------------------------------------------------------

// For each S Morse set, the unique L Morse set containing its embedded
// states. Raises EngineError::SplitImage when the image meets two L sets or
// a transient state.
std::vector<int> morse_set_map(const MorseGraph& md_s, const MorseGraph& md_l);

// For each S attractor (by set index), the unique L attractor inside the
// forward closure of the embedded attractor. Raises
// EngineError::MultipleTerminal when the closure holds more than one.
std::vector<std::pair<int, int>> attractor_map(const MorseGraph& md_s,
                                               const TransitionGraph& stg_l,
                                               const MorseGraph& md_l);

// ---------------------------------------------------------------------------
// Whole-correspondence verification
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;  // empty when passing
};

struct CorrespondenceReport {
    int s_state_count = 0;
    int l_state_count = 0;
    std::vector<CheckResult> checks;
    std::vector<int> morse_map;                       // S set index -> L set index (-1 on failure)
    std::vector<std::pair<int, int>> attr_map;        // S attractor set -> L attractor set
    bool morse_map_surjective = false;
    bool morse_map_injective = false;
    std::string morse_map_injective_witness;
    bool attractor_map_injective = false;
    std::string attractor_map_injective_witness;
    bool pass = false;
};

// Everything verify_correspondence builds along the way, for callers that
// want to keep working with the graphs.
struct VerifyArtifacts {
    LParams lifted;
    TransitionGraph stg_s;
    TransitionGraph stg_l;
    MorseGraph md_s;
    MorseGraph md_l;
};

// Lifts the parameter, builds both graphs and Morse graphs, and runs the
// full check battery: oracle equivalence, the edge<->bridge-path
// biconditional over all adjacent pairs, lifting of all short paths plus
// random longer ones, descent from every bridge state, order preservation
// of the Morse-set map, totality/surjectivity of the attractor map onto the
// L attractors, and the fixed-point bijection.
CorrespondenceReport verify_correspondence(const Network& net, const SParams& p, int threads = 1,
                                           VerifyArtifacts* artifacts = nullptr);

}  // namespace sldyn
