#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sldyn {

enum class Sign { Activation, Repression };

// One regulator occurrence inside a logic group.
struct Term {
    int source = -1;
    Sign sign = Sign::Activation;
    bool operator==(const Term&) const = default;
};

// Production logic of a node: a product of sums with unit coefficients.
// Terms inside one group are summed; the group values are multiplied.
struct LogicSpec {
    std::vector<std::vector<Term>> groups;
    bool operator==(const LogicSpec&) const = default;
};

struct Edge {
    int source = -1;
    int target = -1;
    Sign sign = Sign::Activation;
    bool operator==(const Edge&) const = default;
};

struct ParseError : std::runtime_error {
    enum class Kind {
        Syntax,
        NegativeSelfEdge,
        DuplicateEdge,
        UnknownNode,
        NoTargets,
        NoSources,
    };

    ParseError(Kind k, int line, int column, const std::string& message)
        : std::runtime_error(message), kind(k), line(line), column(column) {}

    Kind kind;
    int line;    // 1-based
    int column;  // 1-based
};

const char* parse_error_kind_name(ParseError::Kind k);

// A regulatory network: named nodes, signed edges, and a product-of-sums
// logic per node. Immutable after construction; node order is the order of
// first appearance in the source text and fixes coordinate indices
// everywhere downstream.
class Network {
public:
    // Builds a network from already-parsed pieces and checks the structural
    // invariants (edge/logic consistency, no negative self edge, every node
    // has at least one source and one target). Throws ParseError on failure,
    // with line/column 0 when no source location is available.
    Network(std::vector<std::string> names, std::vector<LogicSpec> logic);

    int node_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    std::optional<int> index_of(const std::string& name) const;

    const LogicSpec& logic(int node) const { return logic_.at(node); }

    // Edges in deterministic order: grouped by target node, then by the
    // position of the term inside the target's logic.
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<int> edge_index(int source, int target) const;

    // Targets T(i) and sources S(i), sorted by node index.
    const std::vector<int>& targets(int node) const { return targets_.at(node); }
    const std::vector<int>& sources(int node) const { return sources_.at(node); }

    // Number of thresholds carried by node i (one per out-edge).
    int threshold_count(int node) const { return static_cast<int>(targets_.at(node).size()); }

    bool operator==(const Network& other) const {
        return names_ == other.names_ && logic_ == other.logic_;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<LogicSpec> logic_;
    std::vector<Edge> edges_;
    std::map<std::pair<int, int>, int> edge_index_;
    std::vector<std::vector<int>> targets_;
    std::vector<std::vector<int>> sources_;
};

// Parses the network DSL. One line per node:
//
//   name : (term term ...)(term ...)    # comment
//
// where a term is `src` (activation) or `~src` (repression), terms inside a
// parenthesis group are summed and groups are multiplied. `#` starts a
// comment, blank lines are skipped, LF and CRLF both work.
Network parse_network(const std::string& text);

// Canonical DSL text; parse_network(print_network(n)) == n.
std::string print_network(const Network& net);

}  // namespace sldyn
