#include "innatecoder/dsl/sampler.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace innatecoder::dsl {

namespace {

void require_positive_option(std::span<const double> w, const char* what) {
    bool any = false;
    for (double x : w) {
        if (x < 0.0) throw std::invalid_argument(std::string(what) + ": negative weight");
        if (x > 0.0) any = true;
    }
    if (!any) throw std::invalid_argument(std::string(what) + ": all weights zero");
}

} // namespace

void SamplerConfig::validate() const {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (number_cap < 1) throw std::invalid_argument("number_cap must be >= 1");
    require_positive_option(weights.statement, "statement weights");
    require_positive_option(weights.condition, "condition weights");
    require_positive_option(weights.perception, "perception weights");
    require_positive_option(weights.action, "action weights");
    if (weights.statement[static_cast<int>(StatementOp::Act)] <= 0.0)
        throw std::invalid_argument("the action production must have positive weight (depth limiting relies on it)");
}

namespace {

world::Action sample_action(const SamplerConfig& cfg, Rng& rng) {
    return static_cast<world::Action>(rng.pick_weighted(cfg.weights.action));
}

world::Percept sample_percept(const SamplerConfig& cfg, Rng& rng) {
    return static_cast<world::Percept>(rng.pick_weighted(cfg.weights.perception));
}

Node sample_condition(const SamplerConfig& cfg, Rng& rng) {
    bool negated = rng.pick_weighted(cfg.weights.condition) == static_cast<int>(ConditionOp::Not);
    return make_condition(sample_percept(cfg, rng), negated);
}

Node sample_number(const SamplerConfig& cfg, Rng& rng) {
    return make_number(1 + rng.uniform_int(cfg.number_cap));
}

// budget >= 1. allow_sequence is false for the left arm of a sequence, which
// keeps chains right-folded by construction.
Node sample_statement(const SamplerConfig& cfg, int budget, bool allow_sequence, Rng& rng) {
    std::array<double, kStatementOpCount> w = cfg.weights.statement;
    if (budget <= 1) {
        for (int i = 0; i < kStatementOpCount; ++i)
            if (i != static_cast<int>(StatementOp::Act)) w[i] = 0.0;
    } else if (!allow_sequence) {
        w[static_cast<int>(StatementOp::Sequence)] = 0.0;
    }
    auto op = static_cast<StatementOp>(rng.pick_weighted(w));
    switch (op) {
        case StatementOp::While: {
            Node cond = sample_condition(cfg, rng);
            return make_while(std::move(cond), sample_statement(cfg, budget - 1, true, rng));
        }
        case StatementOp::If: {
            Node cond = sample_condition(cfg, rng);
            return make_if(std::move(cond), sample_statement(cfg, budget - 1, true, rng));
        }
        case StatementOp::IfElse: {
            Node cond = sample_condition(cfg, rng);
            Node then_body = sample_statement(cfg, budget - 1, true, rng);
            Node else_body = sample_statement(cfg, budget - 1, true, rng);
            return make_ifelse(std::move(cond), std::move(then_body), std::move(else_body));
        }
        case StatementOp::Repeat: {
            Node num = sample_number(cfg, rng);
            return make_repeat(std::move(num), sample_statement(cfg, budget - 1, true, rng));
        }
        case StatementOp::Sequence: {
            Node first = sample_statement(cfg, budget - 1, false, rng);
            Node second = sample_statement(cfg, budget - 1, true, rng);
            return make_sequence(std::move(first), std::move(second));
        }
        case StatementOp::Act:
        default:
            return make_act(sample_action(cfg, rng));
    }
}

} // namespace

Program sample_program(const SamplerConfig& cfg, Rng& rng) {
    cfg.validate();
    return Program(make_program_node(sample_statement(cfg, cfg.max_depth, true, rng)));
}

Node sample_subtree(NonTerminal kind, const SamplerConfig& cfg, Rng& rng) {
    cfg.validate();
    switch (kind) {
        case NonTerminal::Program:
            return make_program_node(sample_statement(cfg, cfg.max_depth, true, rng));
        case NonTerminal::Statement:
            return sample_statement(cfg, cfg.max_depth, true, rng);
        case NonTerminal::Condition:
            return sample_condition(cfg, rng);
        case NonTerminal::Perception:
            return make_percept(sample_percept(cfg, rng));
        case NonTerminal::Action:
            return make_action(sample_action(cfg, rng));
        case NonTerminal::Number:
            return sample_number(cfg, rng);
    }
    throw std::invalid_argument("bad kind");
}

ProductionWeights load_weights_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file: " + path);
    ProductionWeights w;
    std::map<std::string, double*> keys = {
        {"statement.while", &w.statement[0]},
        {"statement.if", &w.statement[1]},
        {"statement.ifelse", &w.statement[2]},
        {"statement.repeat", &w.statement[3]},
        {"statement.sequence", &w.statement[4]},
        {"statement.action", &w.statement[5]},
        {"condition.is", &w.condition[0]},
        {"condition.not", &w.condition[1]},
        {"perception.frontIsClear", &w.perception[0]},
        {"perception.leftIsClear", &w.perception[1]},
        {"perception.rightIsClear", &w.perception[2]},
        {"perception.markersPresent", &w.perception[3]},
        {"perception.noMarkersPresent", &w.perception[4]},
        {"action.move", &w.action[0]},
        {"action.turnLeft", &w.action[1]},
        {"action.turnRight", &w.action[2]},
        {"action.putMarker", &w.action[3]},
        {"action.pickMarker", &w.action[4]},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, value;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        key = trim(line.substr(0, eq));
        value = trim(line.substr(eq + 1));
        auto it = keys.find(key);
        if (it == keys.end())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown weight key '" + key + "'");
        *it->second = std::stod(value);
    }
    return w;
}

} // namespace innatecoder::dsl
