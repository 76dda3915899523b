#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "innatecoder/world/types.hpp"

namespace innatecoder::dsl {

// The six non-terminal symbols of the grammar. Every AST node carries exactly
// one of these; terminal tokens are stored as payloads of their parent node.
enum class NonTerminal : std::uint8_t { Program, Statement, Condition, Perception, Action, Number };
inline constexpr int kNonTerminalCount = 6;

const char* to_string(NonTerminal k);
std::optional<NonTerminal> nonterminal_from_string(std::string_view s);

// Statement productions, in grammar order.
enum class StatementOp : std::uint8_t { While, If, IfElse, Repeat, Sequence, Act };
inline constexpr int kStatementOpCount = 6;

// Condition productions: a bare perception or its negation.
enum class ConditionOp : std::uint8_t { Is, Not };
inline constexpr int kConditionOpCount = 2;

// Number payload for the `infinity` token. Repeat counts are otherwise >= 1.
inline constexpr int kInfinityNumber = 0;

// One AST node. Child layout by kind/op:
//   Program              [Statement]
//   Statement/While      [Condition, Statement]
//   Statement/If         [Condition, Statement]
//   Statement/IfElse     [Condition, Statement, Statement]
//   Statement/Repeat     [Number, Statement]
//   Statement/Sequence   [Statement(non-Sequence), Statement]   (right-folded)
//   Statement/Act        [Action]
//   Condition            [Perception]
//   Perception/Action/Number   leaves (payload in `value`)
struct Node {
    NonTerminal kind = NonTerminal::Statement;
    std::uint8_t op = 0;      // StatementOp or ConditionOp
    std::int16_t value = 0;   // Action/Percept index or Number payload
    std::vector<Node> children;

    StatementOp statement_op() const { return static_cast<StatementOp>(op); }
    ConditionOp condition_op() const { return static_cast<ConditionOp>(op); }
    world::Action action() const { return static_cast<world::Action>(value); }
    world::Percept percept() const { return static_cast<world::Percept>(value); }
    int number() const { return value; }
    bool is_infinity() const { return kind == NonTerminal::Number && value == kInfinityNumber; }

    bool operator==(const Node&) const = default;
};

// Node factories.
Node make_action(world::Action a);
Node make_percept(world::Percept h);
Node make_number(int n); // n >= 1, or kInfinityNumber
Node make_condition(world::Percept h, bool negated = false);
Node make_act(world::Action a); // Statement wrapping an Action leaf
Node make_while(Node condition, Node body);
Node make_if(Node condition, Node body);
Node make_ifelse(Node condition, Node then_body, Node else_body);
Node make_repeat(Node number, Node body);
Node make_sequence(Node first, Node second); // right-folds if `first` is itself a Sequence
Node make_sequence(std::vector<Node> statements);
Node make_program_node(Node body);

// Verifies the child-layout and payload invariants above; throws
// std::invalid_argument on the first violation found.
void check_well_formed(const Node& n);

// Rewrites every Sequence chain into canonical right-folded form. The token
// stream is unchanged (sequencing prints as juxtaposition), so this preserves
// both the printed form and the semantics.
void normalize_sequences(Node& n);

// A complete policy program: a Program-kind root. Construction validates and
// canonicalizes, so two Programs are structurally equal iff they print
// identically. Immutable after construction. Default-constructs to the
// minimal program (a single move), keeping the well-formedness invariant.
class Program {
public:
    Program();
    explicit Program(Node root);

    const Node& root() const { return root_; }

    bool operator==(const Program&) const = default;

private:
    Node root_;
};

struct TypeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace innatecoder::dsl
