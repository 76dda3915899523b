#pragma once

#include <array>
#include <string>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/rng.hpp"

namespace innatecoder::dsl {

// Per-non-terminal production weights. Order matches the production enums
// (StatementOp / ConditionOp) and the world::Action / world::Percept enums.
// Uniform by default; a handcrafted table can be loaded from a config file.
struct ProductionWeights {
    std::array<double, kStatementOpCount> statement{1, 1, 1, 1, 1, 1};
    std::array<double, kConditionOpCount> condition{1, 1};
    std::array<double, world::kPerceptCount> perception{1, 1, 1, 1, 1};
    std::array<double, world::kActionCount> action{1, 1, 1, 1, 1};
};

struct SamplerConfig {
    // Statement nesting budget. The root statement gets the full budget, each
    // structured statement hands its statement children budget-1, and a
    // statement with budget 1 must be a primitive action. max_depth=1 thus
    // yields single-action programs.
    int max_depth = 6;
    // REPEAT counts are drawn uniformly from 1..number_cap. `infinity` is
    // never sampled.
    int number_cap = 19;
    ProductionWeights weights;

    void validate() const; // throws std::invalid_argument
};

// Draws a whole program by iterative production-rule expansion.
Program sample_program(const SamplerConfig& cfg, Rng& rng);

// Draws a fragment rooted at the given non-terminal. Statement fragments get
// the full max_depth budget.
Node sample_subtree(NonTerminal kind, const SamplerConfig& cfg, Rng& rng);

// Loads a weights table from a flat key=value file. Keys look like
// `statement.while`, `condition.not`, `perception.frontIsClear`,
// `action.move`. Missing keys keep their defaults; unknown keys are an error.
ProductionWeights load_weights_file(const std::string& path);

} // namespace innatecoder::dsl
