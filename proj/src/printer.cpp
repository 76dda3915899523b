#include "innatecoder/dsl/printer.hpp"

namespace innatecoder::dsl {

namespace {

void emit(const Node& n, std::string& out) {
    auto word = [&out](const char* w) {
        if (!out.empty()) out += ' ';
        out += w;
    };
    switch (n.kind) {
        case NonTerminal::Program:
            word("DEF");
            word("run");
            word("m(");
            emit(n.children[0], out);
            word("m)");
            break;
        case NonTerminal::Statement:
            switch (n.statement_op()) {
                case StatementOp::While:
                    word("WHILE");
                    word("c(");
                    emit(n.children[0], out);
                    word("c)");
                    word("w(");
                    emit(n.children[1], out);
                    word("w)");
                    break;
                case StatementOp::If:
                    word("IF");
                    word("c(");
                    emit(n.children[0], out);
                    word("c)");
                    word("i(");
                    emit(n.children[1], out);
                    word("i)");
                    break;
                case StatementOp::IfElse:
                    word("IFELSE");
                    word("c(");
                    emit(n.children[0], out);
                    word("c)");
                    word("i(");
                    emit(n.children[1], out);
                    word("i)");
                    word("ELSE");
                    word("e(");
                    emit(n.children[2], out);
                    word("e)");
                    break;
                case StatementOp::Repeat:
                    word("REPEAT");
                    {
                        std::string tok = "R=";
                        if (n.children[0].is_infinity())
                            tok += "infinity";
                        else
                            tok += std::to_string(n.children[0].number());
                        word(tok.c_str());
                    }
                    word("r(");
                    emit(n.children[1], out);
                    word("r)");
                    break;
                case StatementOp::Sequence:
                    emit(n.children[0], out);
                    emit(n.children[1], out);
                    break;
                case StatementOp::Act:
                    emit(n.children[0], out);
                    break;
            }
            break;
        case NonTerminal::Condition:
            if (n.condition_op() == ConditionOp::Not) {
                word("not(");
                emit(n.children[0], out);
                word(")");
            } else {
                emit(n.children[0], out);
            }
            break;
        case NonTerminal::Perception:
            word(world::to_string(n.percept()));
            break;
        case NonTerminal::Action:
            word(world::to_string(n.action()));
            break;
        case NonTerminal::Number: {
            std::string tok = n.is_infinity() ? "infinity" : std::to_string(n.number());
            word(tok.c_str());
            break;
        }
    }
}

} // namespace

std::string print(const Program& p) { return print_node(p.root()); }

std::string print_node(const Node& n) {
    std::string out;
    emit(n, out);
    return out;
}

} // namespace innatecoder::dsl
