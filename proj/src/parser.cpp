#include "innatecoder/dsl/parser.hpp"

#include <cctype>
#include <sstream>

namespace innatecoder::dsl {

ParseError::ParseError(std::string message, std::size_t byte_offset, std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "parse error at byte " << byte_offset << ": " << message;
          if (!expected.empty()) {
              os << " (expected";
              for (const auto& e : expected) os << ' ' << e;
              os << ')';
          }
          return os.str();
      }()),
      offset_(byte_offset),
      expected_(std::move(expected)) {}

namespace {

struct Token {
    std::string_view text;
    std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        out.push_back({text.substr(start, i - start), start});
    }
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts)
        : tokens_(tokenize(text)), end_offset_(text.size()), opts_(opts) {}

    Node parse_kind(NonTerminal kind) {
        Node n;
        switch (kind) {
            case NonTerminal::Program: n = parse_program(); break;
            case NonTerminal::Statement: n = parse_statements(); break;
            case NonTerminal::Condition: n = parse_condition(); break;
            case NonTerminal::Perception: n = make_percept(parse_percept()); break;
            case NonTerminal::Action: n = make_action(parse_action()); break;
            case NonTerminal::Number: n = parse_number_token(); break;
            default: throw std::invalid_argument("bad kind");
        }
        if (pos_ != tokens_.size())
            error("trailing input", {"end of input"});
        return n;
    }

private:
    [[noreturn]] void error(const std::string& msg, std::vector<std::string> expected) {
        std::size_t off = pos_ < tokens_.size() ? tokens_[pos_].offset : end_offset_;
        throw ParseError(msg, off, std::move(expected));
    }

    bool at_end() const { return pos_ >= tokens_.size(); }

    std::string_view peek() const { return at_end() ? std::string_view{} : tokens_[pos_].text; }

    std::string_view take() {
        std::string_view t = peek();
        ++pos_;
        return t;
    }

    void expect(std::string_view tok) {
        if (at_end() || peek() != tok)
            error(at_end() ? "unexpected end of input" : "unexpected token '" + std::string(peek()) + "'",
                  {std::string(tok)});
        ++pos_;
    }

    static bool is_statement_start(std::string_view t) {
        return t == "WHILE" || t == "IF" || t == "IFELSE" || t == "REPEAT" ||
               world::action_from_string(t).has_value();
    }

    Node parse_program() {
        expect("DEF");
        expect("run");
        expect("m(");
        Node body = parse_statements();
        expect("m)");
        return make_program_node(std::move(body));
    }

    // One or more statements; juxtaposition folds into right-nested Sequence
    // nodes.
    Node parse_statements() {
        std::vector<Node> items;
        if (at_end() || !is_statement_start(peek()))
            error("statement required",
                  {"WHILE", "IF", "IFELSE", "REPEAT", "move", "turnLeft", "turnRight", "putMarker", "pickMarker"});
        while (!at_end() && is_statement_start(peek())) items.push_back(parse_one_statement());
        return make_sequence(std::move(items));
    }

    Node parse_one_statement() {
        std::string_view t = peek();
        if (t == "WHILE") {
            ++pos_;
            expect("c(");
            Node cond = parse_condition();
            expect("c)");
            expect("w(");
            Node body = parse_statements();
            expect("w)");
            return make_while(std::move(cond), std::move(body));
        }
        if (t == "IF") {
            ++pos_;
            expect("c(");
            Node cond = parse_condition();
            expect("c)");
            expect("i(");
            Node body = parse_statements();
            expect("i)");
            return make_if(std::move(cond), std::move(body));
        }
        if (t == "IFELSE") {
            ++pos_;
            expect("c(");
            Node cond = parse_condition();
            expect("c)");
            expect("i(");
            Node then_body = parse_statements();
            expect("i)");
            expect("ELSE");
            expect("e(");
            Node else_body = parse_statements();
            expect("e)");
            return make_ifelse(std::move(cond), std::move(then_body), std::move(else_body));
        }
        if (t == "REPEAT") {
            ++pos_;
            Node num = parse_repeat_count();
            expect("r(");
            Node body = parse_statements();
            expect("r)");
            return make_repeat(std::move(num), std::move(body));
        }
        if (auto a = world::action_from_string(t)) {
            ++pos_;
            return make_act(*a);
        }
        error("unknown token '" + std::string(t) + "'",
              {"WHILE", "IF", "IFELSE", "REPEAT", "move", "turnLeft", "turnRight", "putMarker", "pickMarker"});
    }

    Node parse_condition() {
        if (peek() == "not(") {
            ++pos_;
            world::Percept h = parse_percept();
            expect(")");
            return make_condition(h, /*negated=*/true);
        }
        return make_condition(parse_percept(), /*negated=*/false);
    }

    world::Percept parse_percept() {
        if (!at_end()) {
            if (auto h = world::percept_from_string(peek())) {
                ++pos_;
                return *h;
            }
        }
        error(at_end() ? "unexpected end of input" : "unknown perception '" + std::string(peek()) + "'",
              {"frontIsClear", "leftIsClear", "rightIsClear", "markersPresent", "noMarkersPresent"});
    }

    world::Action parse_action() {
        if (!at_end()) {
            if (auto a = world::action_from_string(peek())) {
                ++pos_;
                return *a;
            }
        }
        error(at_end() ? "unexpected end of input" : "unknown action '" + std::string(peek()) + "'",
              {"move", "turnLeft", "turnRight", "putMarker", "pickMarker"});
    }

    // The `R=<n>` token of a REPEAT header.
    Node parse_repeat_count() {
        if (at_end() || peek().substr(0, 2) != "R=")
            error("repeat count required", {"R=<number>", "R=infinity"});
        std::string_view t = take();
        return number_from_text(t.substr(2), tokens_[pos_ - 1].offset);
    }

    // A bare number token (fragment parsing).
    Node parse_number_token() {
        if (at_end()) error("number required", {"1.." + std::to_string(opts_.number_cap), "infinity"});
        std::string_view t = take();
        return number_from_text(t, tokens_[pos_ - 1].offset);
    }

    Node number_from_text(std::string_view body, std::size_t offset) {
        if (body == "infinity") return make_number(kInfinityNumber);
        if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("malformed number '" + std::string(body) + "'", offset,
                             {"1.." + std::to_string(opts_.number_cap), "infinity"});
        long v = 0;
        for (char c : body) {
            v = v * 10 + (c - '0');
            if (v > opts_.number_cap) break;
        }
        if (v < 1 || v > opts_.number_cap)
            throw ParseError("number " + std::string(body) + " outside 1.." + std::to_string(opts_.number_cap),
                             offset, {"1.." + std::to_string(opts_.number_cap), "infinity"});
        return make_number(static_cast<int>(v));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t end_offset_;
    ParseOptions opts_;
};

} // namespace

Program parse(std::string_view text, const ParseOptions& opts) {
    Parser p(text, opts);
    return Program(p.parse_kind(NonTerminal::Program));
}

Node parse_node(NonTerminal kind, std::string_view text, const ParseOptions& opts) {
    Parser p(text, opts);
    return p.parse_kind(kind);
}

} // namespace innatecoder::dsl
