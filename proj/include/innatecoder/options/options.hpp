#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/interp/interp.hpp"
#include "innatecoder/rng.hpp"
#include "innatecoder/tasks/tasks.hpp"

namespace innatecoder::options {

// NoAction entry in an action signature; other entries are world::Action
// values 0..4.
inline constexpr std::uint8_t kNoAction = 5;

struct OptionRecord {
    dsl::Node program; // detached subtree
    dsl::NonTerminal root_kind = dsl::NonTerminal::Statement;
    std::string text; // printed form (identity key together with root_kind)
    std::vector<std::uint8_t> signature;
    std::uint64_t signature_hash = 0;
};

// The filtered, behaviorally distinct option set, indexed by root kind for
// the semantic neighborhood.
struct OptionLibrary {
    std::vector<OptionRecord> records;
    std::array<std::vector<int>, dsl::kNonTerminalCount> by_kind;

    void rebuild_index();
    const std::vector<int>& matching(dsl::NonTerminal kind) const {
        return by_kind[static_cast<std::size_t>(kind)];
    }
    bool empty() const { return records.empty(); }
};

struct StateVector {
    std::vector<world::WorldState> states;
    tasks::TaskId task = tasks::TaskId::StairClimber;
    std::uint64_t seed = 0;
};

struct PipelineStats {
    int pool_size = 0;            // |O| after structural dedup
    int excluded_non_rollable = 0; // Condition/Perception/Number subtrees dropped
    int state_count = 0;          // |S|
    int option_count = 0;         // |Omega|
    long ticks = 0;               // interpreter ticks spent collecting + probing
};

// All sub-programs of the corpus, one per non-terminal-rooted subtree,
// structurally deduplicated (first occurrence wins, pool order is corpus
// order).
std::vector<OptionRecord> extract_option_pool(const std::vector<dsl::Program>& programs);

// Rolls options out from fresh initial states of the task and records every
// pre-action world state until at least min_states are collected (truncated
// at max_states). Only action-capable options (Program/Statement/Action
// roots) are rolled out.
StateVector collect_states(const std::vector<OptionRecord>& pool, tasks::TaskId task, std::uint64_t seed,
                           const interp::ExecLimits& lim, int min_states = 300, int max_states = 700,
                           long* ticks = nullptr, const tasks::TaskOptions& task_options = {});

// Wraps an option subtree into an executable program.
dsl::Program wrap_option(const dsl::Node& option);

// signature[i] = first action of the option on states[i], kNoAction if none.
std::vector<std::uint8_t> action_signature(const dsl::Node& option, const StateVector& states,
                                           const interp::ExecLimits& lim, long* ticks = nullptr);

std::uint64_t signature_hash(const std::vector<std::uint8_t>& signature);

// Keeps one option (first seen in pool order) per distinct signature;
// non-rollable root kinds are excluded before signatures are computed. The
// all-NoAction class is retained like any other. Stats, when given, receive
// the exclusion/count accounting.
OptionLibrary filter_options(const std::vector<OptionRecord>& pool, const StateVector& states,
                             const interp::ExecLimits& lim, PipelineStats* stats = nullptr);

// Corpus → Omega in one call.
OptionLibrary build_library(const std::vector<dsl::Program>& corpus, tasks::TaskId task,
                            std::uint64_t seed, const interp::ExecLimits& lim,
                            PipelineStats* stats = nullptr, const tasks::TaskOptions& task_options = {});

bool is_action_capable(dsl::NonTerminal kind);

// Options file: one JSON object per line with fields program, root_kind,
// signature_hash.
void save_options_file(const std::string& path, const OptionLibrary& lib);
OptionLibrary load_options_file(const std::string& path);

} // namespace innatecoder::options
