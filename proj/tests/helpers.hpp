#pragma once

#include <string>
#include <vector>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/world/types.hpp"

// Test-only oracles, written independently of the library implementations
// they check.

namespace testutil {

using innatecoder::dsl::Node;
using innatecoder::dsl::NonTerminal;
using innatecoder::dsl::StatementOp;

// Iterative node counter (the library's is recursive).
inline int brute_force_node_count(const Node& root) {
    int count = 0;
    std::vector<const Node*> stack{&root};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        ++count;
        for (const Node& c : n->children) stack.push_back(&c);
    }
    return count;
}

// Statement-nesting depth as the sampler's budget accounting defines it:
// a primitive action is depth 1, every structured statement adds one level.
inline int statement_depth(const Node& stmt) {
    switch (stmt.statement_op()) {
        case StatementOp::Act:
            return 1;
        case StatementOp::While:
        case StatementOp::If:
        case StatementOp::Repeat:
            return 1 + statement_depth(stmt.children[1]);
        case StatementOp::IfElse:
            return 1 + std::max(statement_depth(stmt.children[1]), statement_depth(stmt.children[2]));
        case StatementOp::Sequence:
            return 1 + std::max(statement_depth(stmt.children[0]), statement_depth(stmt.children[1]));
    }
    return 0;
}

// Exhaustive enumeration of every well-formed subtree of the given kind with
// statement depth <= depth and repeat counts 1..number_cap.
inline std::vector<Node> enumerate_subtrees(NonTerminal kind, int depth, int number_cap) {
    std::vector<Node> out;
    switch (kind) {
        case NonTerminal::Action:
            for (int a = 0; a < world::kActionCount; ++a) out.push_back(make_action(static_cast<Action>(a)));
            break;
        case NonTerminal::Perception:
            for (int h = 0; h < world::kPerceptCount; ++h) out.push_back(make_percept(static_cast<Percept>(h)));
            break;
        case NonTerminal::Number:
            for (int v = 1; v <= number_cap; ++v) out.push_back(make_number(v));
            break;
        case NonTerminal::Condition:
            for (int h = 0; h < world::kPerceptCount; ++h) {
                out.push_back(make_condition(static_cast<Percept>(h), false));
                out.push_back(make_condition(static_cast<Percept>(h), true));
            }
            break;
        case NonTerminal::Statement: {
            for (int a = 0; a < world::kActionCount; ++a) out.push_back(make_act(static_cast<Action>(a)));
            if (depth >= 2) {
                auto conds = enumerate_subtrees(NonTerminal::Condition, depth, number_cap);
                auto bodies = enumerate_subtrees(NonTerminal::Statement, depth - 1, number_cap);
                auto nonseq = bodies;
                std::erase_if(nonseq, [](const Node& n) { return n.statement_op() == StatementOp::Sequence; });
                for (const Node& c : conds)
                    for (const Node& b : bodies) {
                        out.push_back(make_while(c, b));
                        out.push_back(make_if(c, b));
                    }
                for (const Node& c : conds)
                    for (const Node& t : bodies)
                        for (const Node& e : bodies) out.push_back(make_ifelse(c, t, e));
                for (int v = 1; v <= number_cap; ++v)
                    for (const Node& b : bodies) out.push_back(make_repeat(make_number(v), b));
                for (const Node& l : nonseq)
                    for (const Node& r : bodies) out.push_back(make_sequence(l, r));
            }
            break;
        }
        case NonTerminal::Program:
            for (const Node& b : enumerate_subtrees(NonTerminal::Statement, depth, number_cap))
                out.push_back(make_program_node(b));
            break;
    }
    return out;
}

inline std::string fixture_path(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

} // namespace testutil
