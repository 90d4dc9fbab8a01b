#pragma once

#include "sldyn/stg.hpp"

#include <string>
#include <vector>

namespace sldyn {

// Maximal strongly connected set with at least one internal edge (a
// singleton counts only when self-looped). States are sorted ranks.
struct MorseSet {
    std::vector<int> states;
    int index = -1;  // position in the deterministic output order
    bool operator==(const MorseSet&) const = default;
};

enum class MorseKind { FP, FC, XC };

struct MorseLabel {
    MorseKind kind = MorseKind::FP;
    std::vector<int> varying;  // nodes whose coordinate varies across the set
    bool operator==(const MorseLabel&) const = default;
};

std::string morse_label_text(const MorseLabel& label, const Network& net);

// Hasse diagram of the reachability order over the recurrent components.
// `down[i]` lists the immediate lower neighbors of set i (edges point toward
// the attractors); `reach` is the full reachability relation between sets.
struct MorseGraph {
    StateSpace space;
    std::vector<MorseSet> sets;          // ordered by minimal member state
    std::vector<MorseLabel> labels;
    std::vector<std::vector<int>> down;
    std::vector<bool> attractor;
    std::vector<std::vector<bool>> reach;  // reach[a][b]: path from set a to set b (a==b included)
    std::vector<int> set_of_state;         // state rank -> set index, -1 if transient

    int set_count() const { return static_cast<int>(sets.size()); }
    bool reaches(int from, int to) const { return reach[from][to]; }
};

// All recurrent components in deterministic order.
std::vector<MorseSet> recurrent_components(const TransitionGraph& g);

// FP for singletons, FC when every coordinate varies, XC otherwise.
MorseLabel classify(const MorseSet& ms, const StateSpace& space);

MorseGraph morse_graph(const TransitionGraph& g);

// Indices of the minimal sets. Verifies that every state reaches at least
// one attractor and that no edge leaves an attractor's state set.
std::vector<int> attractors(const MorseGraph& mg, const TransitionGraph& g);

}  // namespace sldyn
