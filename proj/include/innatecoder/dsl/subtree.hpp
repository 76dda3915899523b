#pragma once

#include <utility>
#include <vector>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/rng.hpp"

namespace innatecoder::dsl {

// Node handles are pre-order indices into the AST (the root is 0). A handle
// is only meaningful for the exact Program it was issued against.
using NodeHandle = int;

int node_count(const Node& n);

// Pointer into the tree; throws std::out_of_range for a bad handle.
const Node& node_at(const Node& root, NodeHandle handle);

// One detached copy per non-terminal node of p, in pre-order. Index 0 is the
// whole program.
std::vector<std::pair<NonTerminal, Node>> subprograms(const Program& p);

// Uniform over all nodes, including the root.
NodeHandle random_nonterminal_node(const Program& p, Rng& rng);

// Functional update: returns a new Program with the subtree at `at` replaced.
// Throws TypeMismatchError unless the replacement's root kind matches the
// node's kind.
Program replace_subtree(const Program& p, NodeHandle at, const Node& replacement);

} // namespace innatecoder::dsl
