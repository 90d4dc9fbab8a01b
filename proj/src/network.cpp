#include "sldyn/network.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sldyn {

const char* parse_error_kind_name(ParseError::Kind k) {
    switch (k) {
        case ParseError::Kind::Syntax: return "SyntaxError";
        case ParseError::Kind::NegativeSelfEdge: return "NegativeSelfEdge";
        case ParseError::Kind::DuplicateEdge: return "DuplicateEdge";
        case ParseError::Kind::UnknownNode: return "UnknownNode";
        case ParseError::Kind::NoTargets: return "NoTargets";
        case ParseError::Kind::NoSources: return "NoSources";
    }
    return "ParseError";
}

Network::Network(std::vector<std::string> names, std::vector<LogicSpec> logic)
    : names_(std::move(names)), logic_(std::move(logic)) {
    if (names_.size() != logic_.size())
        throw ParseError(ParseError::Kind::Syntax, 0, 0, "node/logic count mismatch");

    const int n = node_count();
    for (int i = 0; i < n; ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw ParseError(ParseError::Kind::Syntax, 0, 0,
                             "duplicate node '" + names_[i] + "'");
    }

    targets_.assign(n, {});
    sources_.assign(n, {});
    for (int tgt = 0; tgt < n; ++tgt) {
        if (logic_[tgt].groups.empty())
            throw ParseError(ParseError::Kind::NoSources, 0, 0,
                             "node '" + names_[tgt] + "' has no sources");
        std::set<int> seen;
        for (const auto& group : logic_[tgt].groups) {
            if (group.empty())
                throw ParseError(ParseError::Kind::Syntax, 0, 0, "empty logic group");
            for (const Term& t : group) {
                if (t.source < 0 || t.source >= n)
                    throw ParseError(ParseError::Kind::UnknownNode, 0, 0,
                                     "logic references unknown node");
                if (t.source == tgt && t.sign == Sign::Repression)
                    throw ParseError(ParseError::Kind::NegativeSelfEdge, 0, 0,
                                     "negative self edge on '" + names_[tgt] + "'");
                if (!seen.insert(t.source).second)
                    throw ParseError(ParseError::Kind::DuplicateEdge, 0, 0,
                                     "node '" + names_[t.source] + "' appears twice in logic of '" +
                                         names_[tgt] + "'");
                edges_.push_back(Edge{t.source, tgt, t.sign});
            }
        }
    }

    for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
        const Edge& e = edges_[idx];
        edge_index_.emplace(std::make_pair(e.source, e.target), idx);
        targets_[e.source].push_back(e.target);
        sources_[e.target].push_back(e.source);
    }
    for (int i = 0; i < n; ++i) {
        std::sort(targets_[i].begin(), targets_[i].end());
        std::sort(sources_[i].begin(), sources_[i].end());
        if (targets_[i].empty())
            throw ParseError(ParseError::Kind::NoTargets, 0, 0,
                             "node '" + names_[i] + "' is never used as a source");
    }
}

std::optional<int> Network::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> Network::edge_index(int source, int target) const {
    auto it = edge_index_.find({source, target});
    if (it == edge_index_.end())
        return std::nullopt;
    return it->second;
}

namespace {

struct RawTerm {
    std::string source;
    Sign sign;
    int line;
    int column;
};

struct RawLine {
    std::string name;
    std::vector<std::vector<RawTerm>> groups;
    int line;
    int column;
};

bool is_ident_start(char c) {
    return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}
bool is_ident_char(char c) {
    return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

class LineScanner {
public:
    LineScanner(const std::string& text, int line_no) : s_(text), line_(line_no) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
            ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void advance() { ++pos_; }
    int column() const { return static_cast<int>(pos_) + 1; }
    int line() const { return line_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(ParseError::Kind::Syntax, line_, column(), msg);
    }

    std::string identifier() {
        skip_ws();
        if (pos_ >= s_.size() || !is_ident_start(s_[pos_]))
            fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_ident_char(s_[pos_]))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_;
};

RawLine parse_line(const std::string& text, int line_no) {
    LineScanner sc(text, line_no);
    RawLine out;
    out.line = line_no;
    sc.skip_ws();
    out.column = sc.column();
    out.name = sc.identifier();
    sc.skip_ws();
    if (sc.peek() != ':')
        sc.fail("expected ':' after node name");
    sc.advance();

    while (!sc.at_end()) {
        if (sc.peek() != '(')
            sc.fail("expected '('");
        sc.advance();
        std::vector<RawTerm> group;
        while (true) {
            sc.skip_ws();
            if (sc.peek() == ')') {
                sc.advance();
                break;
            }
            if (sc.peek() == '\0')
                sc.fail("unterminated group");
            RawTerm term;
            term.line = line_no;
            term.column = sc.column();
            term.sign = Sign::Activation;
            if (sc.peek() == '~') {
                term.sign = Sign::Repression;
                sc.advance();
            }
            term.source = sc.identifier();
            group.push_back(std::move(term));
        }
        if (group.empty())
            sc.fail("empty group");
        out.groups.push_back(std::move(group));
    }
    return out;
}

}  // namespace

Network parse_network(const std::string& text) {
    if (text.empty())
        throw ParseError(ParseError::Kind::Syntax, 1, 1, "empty input");

    std::vector<RawLine> lines;
    {
        std::istringstream stream(text);
        std::string line;
        int line_no = 0;
        while (std::getline(stream, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            bool blank = line.find_first_not_of(" \t") == std::string::npos;
            if (blank)
                continue;
            lines.push_back(parse_line(line, line_no));
        }
    }
    if (lines.empty())
        throw ParseError(ParseError::Kind::Syntax, 1, 1, "no node declarations");

    std::vector<std::string> names;
    std::map<std::string, int> index;
    for (const RawLine& l : lines) {
        if (index.count(l.name))
            throw ParseError(ParseError::Kind::Syntax, l.line, l.column,
                             "node '" + l.name + "' declared twice");
        index.emplace(l.name, static_cast<int>(names.size()));
        names.push_back(l.name);
    }

    std::vector<LogicSpec> logic(names.size());
    for (const RawLine& l : lines) {
        const int tgt = index.at(l.name);
        if (l.groups.empty())
            throw ParseError(ParseError::Kind::NoSources, l.line, l.column,
                             "node '" + l.name + "' has no sources");
        std::set<std::string> seen;
        LogicSpec spec;
        for (const auto& group : l.groups) {
            std::vector<Term> terms;
            for (const RawTerm& t : group) {
                auto it = index.find(t.source);
                if (it == index.end())
                    throw ParseError(ParseError::Kind::UnknownNode, t.line, t.column,
                                     "unknown node '" + t.source + "'");
                if (t.source == l.name && t.sign == Sign::Repression)
                    throw ParseError(ParseError::Kind::NegativeSelfEdge, t.line, t.column,
                                     "negative self edge on '" + l.name + "'");
                if (!seen.insert(t.source).second)
                    throw ParseError(ParseError::Kind::DuplicateEdge, t.line, t.column,
                                     "node '" + t.source + "' appears twice in logic of '" +
                                         l.name + "'");
                terms.push_back(Term{it->second, t.sign});
            }
            spec.groups.push_back(std::move(terms));
        }
        logic[tgt] = std::move(spec);
    }

    return Network(std::move(names), std::move(logic));
}

std::string print_network(const Network& net) {
    std::string out;
    for (int i = 0; i < net.node_count(); ++i) {
        if (i > 0)
            out += '\n';
        out += net.name(i);
        out += " : ";
        for (const auto& group : net.logic(i).groups) {
            out += '(';
            bool first = true;
            for (const Term& t : group) {
                if (!first)
                    out += ' ';
                first = false;
                if (t.sign == Sign::Repression)
                    out += '~';
                out += net.name(t.source);
            }
            out += ')';
        }
    }
    return out;
}

}  // namespace sldyn
