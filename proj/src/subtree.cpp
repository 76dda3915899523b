#include "innatecoder/dsl/subtree.hpp"

#include <stdexcept>
#include <string>

namespace innatecoder::dsl {

int node_count(const Node& n) {
    int total = 1;
    for (const Node& c : n.children) total += node_count(c);
    return total;
}

namespace {

// Walks to the pre-order index; returns nullptr when the index falls outside
// this subtree and decrements `remaining` by the subtree size.
const Node* find_preorder(const Node& n, int& remaining) {
    if (remaining == 0) return &n;
    --remaining;
    for (const Node& c : n.children) {
        if (const Node* hit = find_preorder(c, remaining)) return hit;
    }
    return nullptr;
}

Node* find_preorder_mut(Node& n, int& remaining) {
    if (remaining == 0) return &n;
    --remaining;
    for (Node& c : n.children) {
        if (Node* hit = find_preorder_mut(c, remaining)) return hit;
    }
    return nullptr;
}

void collect(const Node& n, std::vector<std::pair<NonTerminal, Node>>& out) {
    out.emplace_back(n.kind, n);
    for (const Node& c : n.children) collect(c, out);
}

} // namespace

const Node& node_at(const Node& root, NodeHandle handle) {
    int remaining = handle;
    if (handle >= 0) {
        if (const Node* hit = find_preorder(root, remaining)) return *hit;
    }
    throw std::out_of_range("node handle " + std::to_string(handle) + " out of range");
}

std::vector<std::pair<NonTerminal, Node>> subprograms(const Program& p) {
    std::vector<std::pair<NonTerminal, Node>> out;
    out.reserve(static_cast<std::size_t>(node_count(p.root())));
    collect(p.root(), out);
    return out;
}

NodeHandle random_nonterminal_node(const Program& p, Rng& rng) {
    return rng.uniform_int(node_count(p.root()));
}

Program replace_subtree(const Program& p, NodeHandle at, const Node& replacement) {
    const Node& target = node_at(p.root(), at);
    if (target.kind != replacement.kind)
        throw TypeMismatchError(std::string("cannot replace ") + to_string(target.kind) + " node with " +
                                to_string(replacement.kind) + " subtree");
    Node root = p.root();
    int remaining = at;
    Node* slot = find_preorder_mut(root, remaining);
    *slot = replacement;
    return Program(std::move(root)); // Program() re-normalizes sequence chains
}

} // namespace innatecoder::dsl
