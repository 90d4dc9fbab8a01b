#pragma once

#include "sldyn/errors.hpp"
#include "sldyn/network.hpp"

#include <string>
#include <vector>

namespace sldyn {

enum class Model { S, L };

inline const char* model_name(Model m) { return m == Model::S ? "s" : "l"; }

// Hard ceiling on enumerable state spaces; construction fails cleanly past it.
inline constexpr long long kMaxStates = 1 << 24;

// Discrete state space of one model. States are level vectors in node order;
// S levels run 0..m_i, L levels 0..2*m_i where odd levels encode the bridge
// intervals (the half-integer states, doubled). Ranks enumerate states in
// lexicographic order with node 0 most significant.
struct StateSpace {
    Model model = Model::S;
    std::vector<int> dims;  // number of levels per node

    static StateSpace for_model(const Network& net, Model m) {
        StateSpace sp;
        sp.model = m;
        sp.dims.reserve(net.node_count());
        long long total = 1;
        for (int i = 0; i < net.node_count(); ++i) {
            int mi = net.threshold_count(i);
            sp.dims.push_back(m == Model::S ? mi + 1 : 2 * mi + 1);
            total *= sp.dims.back();
            if (total > kMaxStates)
                throw EngineError(EngineError::Code::BadInput,
                                  "state space exceeds " + std::to_string(kMaxStates) +
                                      " states");
        }
        return sp;
    }

    int node_count() const { return static_cast<int>(dims.size()); }

    long long count() const {
        long long c = 1;
        for (int d : dims)
            c *= d;
        return c;
    }

    int rank(const std::vector<int>& levels) const {
        int r = 0;
        for (std::size_t i = 0; i < dims.size(); ++i)
            r = r * dims[i] + levels[i];
        return r;
    }

    std::vector<int> unrank(int r) const {
        std::vector<int> levels(dims.size());
        for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
            levels[i] = r % dims[i];
            r /= dims[i];
        }
        return levels;
    }

    bool contains(const std::vector<int>& levels) const {
        if (levels.size() != dims.size())
            return false;
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (levels[i] < 0 || levels[i] >= dims[i])
                return false;
        return true;
    }
};

inline std::string format_state(const std::vector<int>& levels) {
    std::string s = "(";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(levels[i]);
    }
    s += ')';
    return s;
}

}  // namespace sldyn
