#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/tasks/tasks.hpp"

namespace innatecoder::interp {

struct ExecLimits {
    int max_actions = 250;     // environment actions per episode
    long max_ticks = 100000;   // interpreter steps; guards action-free loops
};

enum class TerminalCause : std::uint8_t { ProgramEnded, TaskDone, Crashed, ActionBudget, TickBudget };
const char* to_string(TerminalCause c);

struct EpisodeResult {
    double episodic_return = 0.0;
    int actions_taken = 0;
    TerminalCause cause = TerminalCause::ProgramEnded;
    long ticks = 0;
    std::vector<world::Action> trace; // filled only when requested
};

// Called with the live world state just before each action is issued.
using StateObserver = std::function<void(const world::WorldState&)>;

// Executes p as a policy for one episode, advancing `instance` in place (copy
// first to keep the original). Structured control runs the usual way: WHILE
// re-reads its perception every iteration, IF/IFELSE branch once per entry,
// REPEAT R=n runs its body n times and R=infinity until a budget or terminal
// stops it. Task termination and crashes pre-empt the remaining program text
// immediately.
EpisodeResult run_episode(const dsl::Program& p, tasks::TaskInstance& instance, const ExecLimits& lim,
                          bool capture_trace = false, const StateObserver* pre_action = nullptr);

// Runs p from a fresh invocation against a snapshot of s and reports the
// first primitive action it reaches, or nullopt if the program (or the tick
// budget) ends first. Nothing is applied to the world.
std::optional<world::Action> first_action(const dsl::Program& p, const world::WorldState& s,
                                          const ExecLimits& lim, long* ticks = nullptr);

} // namespace innatecoder::interp
