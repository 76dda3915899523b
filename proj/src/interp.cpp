#include "innatecoder/interp/interp.hpp"

#include <cassert>

namespace innatecoder::interp {

using dsl::ConditionOp;
using dsl::Node;
using dsl::StatementOp;

const char* to_string(TerminalCause c) {
    switch (c) {
        case TerminalCause::ProgramEnded: return "ProgramEnded";
        case TerminalCause::TaskDone: return "TaskDone";
        case TerminalCause::Crashed: return "Crashed";
        case TerminalCause::ActionBudget: return "ActionBudget";
        case TerminalCause::TickBudget: return "TickBudget";
    }
    return "?";
}

namespace {

struct Exec {
    tasks::TaskInstance& inst;
    const ExecLimits& lim;
    std::vector<world::Action>* trace;
    const StateObserver* observer;
    long ticks = 0;
    int actions = 0;
    std::optional<TerminalCause> stop;

    bool tick() {
        if (++ticks > lim.max_ticks) {
            stop = TerminalCause::TickBudget;
            return false;
        }
        return true;
    }

    bool eval_condition(const Node& c) {
        if (stop || !tick()) return false;
        bool v = world::perceive(inst.world, c.children[0].percept());
        return c.condition_op() == ConditionOp::Not ? !v : v;
    }

    void act(world::Action a) {
        if (stop) return;
        if (actions >= lim.max_actions) {
            stop = TerminalCause::ActionBudget;
            return;
        }
        if (observer) (*observer)(inst.world);
        tasks::StepResult res = tasks::step(inst, a);
        ++actions;
        if (trace) trace->push_back(a);
        if (inst.world.crashed)
            stop = TerminalCause::Crashed;
        else if (res.done)
            stop = TerminalCause::TaskDone;
    }

    void exec(const Node& n) {
        if (stop || !tick()) return;
        switch (n.statement_op()) {
            case StatementOp::While:
                while (!stop && eval_condition(n.children[0])) exec(n.children[1]);
                break;
            case StatementOp::If:
                if (eval_condition(n.children[0])) exec(n.children[1]);
                break;
            case StatementOp::IfElse:
                if (eval_condition(n.children[0]))
                    exec(n.children[1]);
                else if (!stop)
                    exec(n.children[2]);
                break;
            case StatementOp::Repeat:
                if (n.children[0].is_infinity()) {
                    while (!stop) exec(n.children[1]);
                } else {
                    for (int i = 0; i < n.children[0].number() && !stop; ++i) exec(n.children[1]);
                }
                break;
            case StatementOp::Sequence:
                exec(n.children[0]);
                exec(n.children[1]);
                break;
            case StatementOp::Act:
                act(n.children[0].action());
                break;
        }
    }
};

} // namespace

EpisodeResult run_episode(const dsl::Program& p, tasks::TaskInstance& instance, const ExecLimits& lim,
                          bool capture_trace, const StateObserver* pre_action) {
    assert(!instance.world.crashed && "instance must be freshly initialized");
    EpisodeResult out;
    Exec ex{instance, lim, capture_trace ? &out.trace : nullptr, pre_action, 0, 0, std::nullopt};
    ex.exec(p.root().children[0]);
    out.episodic_return = instance.return_so_far;
    out.actions_taken = ex.actions;
    out.ticks = ex.ticks;
    out.cause = ex.stop.value_or(TerminalCause::ProgramEnded);
    return out;
}

namespace {

struct Probe {
    const world::WorldState& w;
    const ExecLimits& lim;
    long ticks = 0;
    std::optional<world::Action> found;
    bool halted = false;

    bool tick() {
        if (++ticks > lim.max_ticks) {
            halted = true;
            return false;
        }
        return true;
    }

    bool eval_condition(const Node& c) {
        if (halted || found || !tick()) return false;
        bool v = world::perceive(w, c.children[0].percept());
        return c.condition_op() == ConditionOp::Not ? !v : v;
    }

    void exec(const Node& n) {
        if (halted || found || !tick()) return;
        switch (n.statement_op()) {
            case StatementOp::While:
                while (!halted && !found && eval_condition(n.children[0])) exec(n.children[1]);
                break;
            case StatementOp::If:
                if (eval_condition(n.children[0])) exec(n.children[1]);
                break;
            case StatementOp::IfElse:
                if (eval_condition(n.children[0]))
                    exec(n.children[1]);
                else if (!halted && !found)
                    exec(n.children[2]);
                break;
            case StatementOp::Repeat:
                if (n.children[0].is_infinity()) {
                    while (!halted && !found) exec(n.children[1]);
                } else {
                    for (int i = 0; i < n.children[0].number() && !halted && !found; ++i) exec(n.children[1]);
                }
                break;
            case StatementOp::Sequence:
                exec(n.children[0]);
                exec(n.children[1]);
                break;
            case StatementOp::Act:
                found = n.children[0].action();
                break;
        }
    }
};

} // namespace

std::optional<world::Action> first_action(const dsl::Program& p, const world::WorldState& s,
                                          const ExecLimits& lim, long* ticks) {
    assert(!s.crashed && "probe state must not be crashed");
    Probe pr{s, lim, 0, std::nullopt, false};
    pr.exec(p.root().children[0]);
    if (ticks) *ticks += pr.ticks;
    return pr.found;
}

} // namespace innatecoder::interp
