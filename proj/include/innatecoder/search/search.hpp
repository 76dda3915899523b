#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "innatecoder/dsl/sampler.hpp"
#include "innatecoder/interp/interp.hpp"
#include "innatecoder/options/options.hpp"
#include "innatecoder/tasks/tasks.hpp"

namespace innatecoder::search {

enum class Method : std::uint8_t { IC, SHC, LISS_O, LISS_R, FM };
const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

struct SearchConfig {
    int k = 1000;                 // neighbors per iteration
    double epsilon = 0.4;         // syntax-move probability in the mixture
    long episode_budget = 100000;
    tasks::TaskId task = tasks::TaskId::StairClimber;
    int eval_set_size = 8;
    dsl::SamplerConfig sampler;
    interp::ExecLimits limits;
    Method method = Method::SHC;
    std::uint64_t master_seed = 0;
    tasks::TaskOptions task_options;
    int liss_r_corpus_size = 100; // sampler-corpus size when no corpus is given
};

struct CurvePoint {
    long episodes = 0;
    double best_value = 0.0;
};

struct AcceptedMove {
    int restart = 0;
    int iteration = 0;
    double value = 0.0;
    dsl::Program program;
};

struct SearchRun {
    dsl::Program best_program;
    double best_value = 0.0;
    std::vector<CurvePoint> curve; // best-so-far after every evaluation batch
    int restarts = 0;
    long episodes_consumed = 0;
    long ticks = 0;
    std::vector<int> options_used;     // Omega indices appearing as subtrees of n*
    std::vector<AcceptedMove> accepted; // every accepted hill-climbing move
    options::PipelineStats pipeline;
};

// How each neighbor in a batch was produced; fallback draws are semantic
// draws that found no kind-matching option and fell back to a fresh subtree.
enum class MoveKind : std::uint8_t { Syntax, Semantic, SyntaxFallback };

struct NeighborBatch {
    std::vector<dsl::Program> programs;
    std::vector<MoveKind> kinds;
};

// k independent draws: pick a uniform non-terminal node, regenerate its
// subtree from the sampler restricted to that node's kind. Per-draw rng
// streams are derived from (seed, draw index), so draws are order- and
// schedule-independent.
NeighborBatch syntax_neighbors(const dsl::Program& n, int k, const dsl::SamplerConfig& cfg,
                               std::uint64_t seed);

// Like syntax_neighbors, but the replacement is a uniformly chosen option
// whose root kind matches the selected node; draws with no matching option
// fall back to a syntax replacement using the same content stream.
NeighborBatch semantic_neighbors(const dsl::Program& n, int k, const options::OptionLibrary& omega,
                                 const dsl::SamplerConfig& cfg, std::uint64_t seed);

// Per-draw mixture: syntax with probability epsilon, semantic otherwise.
// With epsilon=1 the output is identical to syntax_neighbors under the same
// seed; with epsilon=0, identical to semantic_neighbors.
NeighborBatch mixed_neighbors(const dsl::Program& n, int k, const options::OptionLibrary& omega,
                              const dsl::SamplerConfig& cfg, double epsilon, std::uint64_t seed);

// Mean episodic return over one rollout per instance; also reports episodes
// consumed (= eval.size()).
std::pair<double, long> evaluate(const dsl::Program& p, const std::vector<tasks::TaskInstance>& eval,
                                 const interp::ExecLimits& lim, long* ticks = nullptr);

// One hill-climbing ascent from `start`, charging `remaining` episodes.
// Exposed for the exhaustive-ascent oracle tests.
struct ClimbOutcome {
    dsl::Program incumbent;
    double value = 0.0;
    bool budget_exhausted = false;
};
ClimbOutcome climb(const SearchConfig& cfg, const options::OptionLibrary* omega, dsl::Program start,
                   const std::vector<tasks::TaskInstance>& eval, int restart_index, long& remaining,
                   SearchRun& run);

// Stochastic hill-climbing with restarts. Omega==nullptr searches the pure
// syntax space; otherwise the epsilon-mixture is used. Throws if the budget
// cannot pay for a single evaluation.
SearchRun shc(const SearchConfig& cfg, const options::OptionLibrary* omega);

// Dispatches one full run of any method. IC needs omega (or corpus to build
// it); FM needs corpus; LISS_R samples its own corpus; LISS_O starts empty
// and augments at restart boundaries.
SearchRun run_method(const SearchConfig& cfg, const std::vector<dsl::Program>* corpus = nullptr,
                     const options::OptionLibrary* omega = nullptr);

} // namespace innatecoder::search
