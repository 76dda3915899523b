#include "innatecoder/dsl/ast.hpp"

#include <utility>

namespace innatecoder::dsl {

const char* to_string(NonTerminal k) {
    switch (k) {
        case NonTerminal::Program: return "Program";
        case NonTerminal::Statement: return "Statement";
        case NonTerminal::Condition: return "Condition";
        case NonTerminal::Perception: return "Perception";
        case NonTerminal::Action: return "Action";
        case NonTerminal::Number: return "Number";
    }
    return "?";
}

std::optional<NonTerminal> nonterminal_from_string(std::string_view s) {
    if (s == "Program") return NonTerminal::Program;
    if (s == "Statement") return NonTerminal::Statement;
    if (s == "Condition") return NonTerminal::Condition;
    if (s == "Perception") return NonTerminal::Perception;
    if (s == "Action") return NonTerminal::Action;
    if (s == "Number") return NonTerminal::Number;
    return std::nullopt;
}

Node make_action(world::Action a) {
    Node n;
    n.kind = NonTerminal::Action;
    n.value = static_cast<std::int16_t>(a);
    return n;
}

Node make_percept(world::Percept h) {
    Node n;
    n.kind = NonTerminal::Perception;
    n.value = static_cast<std::int16_t>(h);
    return n;
}

Node make_number(int v) {
    if (v < 0) throw std::invalid_argument("number payload must be >= 0");
    Node n;
    n.kind = NonTerminal::Number;
    n.value = static_cast<std::int16_t>(v);
    return n;
}

Node make_condition(world::Percept h, bool negated) {
    Node n;
    n.kind = NonTerminal::Condition;
    n.op = static_cast<std::uint8_t>(negated ? ConditionOp::Not : ConditionOp::Is);
    n.children.push_back(make_percept(h));
    return n;
}

Node make_act(world::Action a) {
    Node n;
    n.kind = NonTerminal::Statement;
    n.op = static_cast<std::uint8_t>(StatementOp::Act);
    n.children.push_back(make_action(a));
    return n;
}

static Node make_stmt(StatementOp op, std::vector<Node> children) {
    Node n;
    n.kind = NonTerminal::Statement;
    n.op = static_cast<std::uint8_t>(op);
    n.children = std::move(children);
    return n;
}

Node make_while(Node condition, Node body) {
    std::vector<Node> c;
    c.push_back(std::move(condition));
    c.push_back(std::move(body));
    return make_stmt(StatementOp::While, std::move(c));
}

Node make_if(Node condition, Node body) {
    std::vector<Node> c;
    c.push_back(std::move(condition));
    c.push_back(std::move(body));
    return make_stmt(StatementOp::If, std::move(c));
}

Node make_ifelse(Node condition, Node then_body, Node else_body) {
    std::vector<Node> c;
    c.push_back(std::move(condition));
    c.push_back(std::move(then_body));
    c.push_back(std::move(else_body));
    return make_stmt(StatementOp::IfElse, std::move(c));
}

Node make_repeat(Node number, Node body) {
    std::vector<Node> c;
    c.push_back(std::move(number));
    c.push_back(std::move(body));
    return make_stmt(StatementOp::Repeat, std::move(c));
}

Node make_sequence(Node first, Node second) {
    std::vector<Node> c;
    c.push_back(std::move(first));
    c.push_back(std::move(second));
    Node n = make_stmt(StatementOp::Sequence, std::move(c));
    normalize_sequences(n);
    return n;
}

Node make_sequence(std::vector<Node> statements) {
    if (statements.empty()) throw std::invalid_argument("empty statement sequence");
    Node acc = std::move(statements.back());
    statements.pop_back();
    while (!statements.empty()) {
        std::vector<Node> c;
        c.push_back(std::move(statements.back()));
        statements.pop_back();
        c.push_back(std::move(acc));
        acc = make_stmt(StatementOp::Sequence, std::move(c));
    }
    normalize_sequences(acc);
    return acc;
}

Node make_program_node(Node body) {
    Node n;
    n.kind = NonTerminal::Program;
    n.children.push_back(std::move(body));
    return n;
}

static void fail(const char* msg) { throw std::invalid_argument(msg); }

void check_well_formed(const Node& n) {
    switch (n.kind) {
        case NonTerminal::Program:
            if (n.children.size() != 1) fail("Program must have exactly one Statement child");
            if (n.children[0].kind != NonTerminal::Statement) fail("Program child must be a Statement");
            break;
        case NonTerminal::Statement:
            switch (n.statement_op()) {
                case StatementOp::While:
                case StatementOp::If:
                    if (n.children.size() != 2 || n.children[0].kind != NonTerminal::Condition ||
                        n.children[1].kind != NonTerminal::Statement)
                        fail("While/If layout is [Condition, Statement]");
                    break;
                case StatementOp::IfElse:
                    if (n.children.size() != 3 || n.children[0].kind != NonTerminal::Condition ||
                        n.children[1].kind != NonTerminal::Statement ||
                        n.children[2].kind != NonTerminal::Statement)
                        fail("IfElse layout is [Condition, Statement, Statement]");
                    break;
                case StatementOp::Repeat:
                    if (n.children.size() != 2 || n.children[0].kind != NonTerminal::Number ||
                        n.children[1].kind != NonTerminal::Statement)
                        fail("Repeat layout is [Number, Statement]");
                    break;
                case StatementOp::Sequence:
                    if (n.children.size() != 2 || n.children[0].kind != NonTerminal::Statement ||
                        n.children[1].kind != NonTerminal::Statement)
                        fail("Sequence layout is [Statement, Statement]");
                    break;
                case StatementOp::Act:
                    if (n.children.size() != 1 || n.children[0].kind != NonTerminal::Action)
                        fail("Act layout is [Action]");
                    break;
                default:
                    fail("unknown statement production");
            }
            break;
        case NonTerminal::Condition:
            if (n.op >= kConditionOpCount) fail("unknown condition production");
            if (n.children.size() != 1 || n.children[0].kind != NonTerminal::Perception)
                fail("Condition layout is [Perception]");
            break;
        case NonTerminal::Perception:
            if (!n.children.empty()) fail("Perception is a leaf");
            if (n.value < 0 || n.value >= world::kPerceptCount) fail("perception out of range");
            break;
        case NonTerminal::Action:
            if (!n.children.empty()) fail("Action is a leaf");
            if (n.value < 0 || n.value >= world::kActionCount) fail("action out of range");
            break;
        case NonTerminal::Number:
            if (!n.children.empty()) fail("Number is a leaf");
            if (n.value < 0) fail("number out of range");
            break;
        default:
            fail("unknown node kind");
    }
    for (const Node& c : n.children) check_well_formed(c);
}

static bool is_sequence(const Node& n) {
    return n.kind == NonTerminal::Statement && n.statement_op() == StatementOp::Sequence;
}

static void flatten_chain(Node&& n, std::vector<Node>& out) {
    if (is_sequence(n)) {
        // children are moved out individually; order preserved
        Node first = std::move(n.children[0]);
        Node second = std::move(n.children[1]);
        flatten_chain(std::move(first), out);
        flatten_chain(std::move(second), out);
    } else {
        out.push_back(std::move(n));
    }
}

void normalize_sequences(Node& n) {
    for (Node& c : n.children) normalize_sequences(c);
    if (!is_sequence(n)) return;
    std::vector<Node> chain;
    flatten_chain(std::move(n), chain);
    // right fold
    Node acc = std::move(chain.back());
    chain.pop_back();
    while (!chain.empty()) {
        std::vector<Node> c;
        c.push_back(std::move(chain.back()));
        chain.pop_back();
        c.push_back(std::move(acc));
        Node seq;
        seq.kind = NonTerminal::Statement;
        seq.op = static_cast<std::uint8_t>(StatementOp::Sequence);
        seq.children = std::move(c);
        acc = std::move(seq);
    }
    n = std::move(acc);
}

Program::Program() : Program(make_program_node(make_act(world::Action::Move))) {}

Program::Program(Node root) : root_(std::move(root)) {
    if (root_.kind != NonTerminal::Program)
        throw std::invalid_argument("Program root must be Program-kind");
    normalize_sequences(root_);
    check_well_formed(root_);
}

} // namespace innatecoder::dsl
