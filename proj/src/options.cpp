#include "innatecoder/options/options.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "innatecoder/dsl/parser.hpp"
#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/dsl/subtree.hpp"

namespace innatecoder::options {

bool is_action_capable(dsl::NonTerminal kind) {
    return kind == dsl::NonTerminal::Program || kind == dsl::NonTerminal::Statement ||
           kind == dsl::NonTerminal::Action;
}

void OptionLibrary::rebuild_index() {
    for (auto& v : by_kind) v.clear();
    for (int i = 0; i < static_cast<int>(records.size()); ++i)
        by_kind[static_cast<std::size_t>(records[static_cast<std::size_t>(i)].root_kind)].push_back(i);
}

std::vector<OptionRecord> extract_option_pool(const std::vector<dsl::Program>& programs) {
    if (programs.empty()) throw std::invalid_argument("empty corpus");
    std::vector<OptionRecord> pool;
    std::map<std::pair<dsl::NonTerminal, std::string>, bool> seen;
    for (const dsl::Program& p : programs) {
        for (auto& [kind, node] : dsl::subprograms(p)) {
            std::string text = dsl::print_node(node);
            if (!seen.emplace(std::make_pair(kind, text), true).second) continue;
            OptionRecord rec;
            rec.program = std::move(node);
            rec.root_kind = kind;
            rec.text = std::move(text);
            pool.push_back(std::move(rec));
        }
    }
    return pool;
}

dsl::Program wrap_option(const dsl::Node& option) {
    switch (option.kind) {
        case dsl::NonTerminal::Program:
            return dsl::Program(option);
        case dsl::NonTerminal::Statement:
            return dsl::Program(dsl::make_program_node(option));
        case dsl::NonTerminal::Action:
            return dsl::Program(dsl::make_program_node(dsl::make_act(option.action())));
        default:
            throw std::invalid_argument("option is not action-capable");
    }
}

StateVector collect_states(const std::vector<OptionRecord>& pool, tasks::TaskId task, std::uint64_t seed,
                           const interp::ExecLimits& lim, int min_states, int max_states, long* ticks,
                           const tasks::TaskOptions& task_options) {
    if (min_states < 1 || max_states < min_states)
        throw std::invalid_argument("bad state-vector bounds");
    std::vector<int> rollable;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i)
        if (is_action_capable(pool[static_cast<std::size_t>(i)].root_kind)) rollable.push_back(i);
    if (rollable.empty()) throw std::invalid_argument("no action-capable option in the pool");

    StateVector sv;
    sv.task = task;
    sv.seed = seed;
    const int kMaxRollouts = 20000;
    int rollout = 0;
    Rng pick(derive_seed(seed, 0x100));
    while (static_cast<int>(sv.states.size()) < min_states) {
        if (rollout >= kMaxRollouts)
            throw std::runtime_error("state collection stalled: no action-capable rollouts produce states");
        int idx = rollable[static_cast<std::size_t>(pick.uniform_int(static_cast<int>(rollable.size())))];
        dsl::Program p = wrap_option(pool[static_cast<std::size_t>(idx)].program);
        Rng init(derive_seed(seed, 0x200, static_cast<std::uint64_t>(rollout)));
        tasks::TaskInstance t = tasks::init_instance(task, init, task_options);
        bool full = false;
        interp::StateObserver obs = [&](const world::WorldState& w) {
            if (static_cast<int>(sv.states.size()) < max_states)
                sv.states.push_back(w);
            else
                full = true;
        };
        auto res = interp::run_episode(p, t, lim, false, &obs);
        if (ticks) *ticks += res.ticks;
        ++rollout;
        if (full) break;
    }
    if (static_cast<int>(sv.states.size()) > max_states) sv.states.resize(static_cast<std::size_t>(max_states));
    return sv;
}

std::vector<std::uint8_t> action_signature(const dsl::Node& option, const StateVector& states,
                                           const interp::ExecLimits& lim, long* ticks) {
    dsl::Program p = wrap_option(option);
    std::vector<std::uint8_t> sig;
    sig.reserve(states.states.size());
    for (const world::WorldState& s : states.states) {
        auto a = interp::first_action(p, s, lim, ticks);
        sig.push_back(a ? static_cast<std::uint8_t>(*a) : kNoAction);
    }
    return sig;
}

std::uint64_t signature_hash(const std::vector<std::uint8_t>& signature) {
    // FNV-1a, stable across platforms and runs
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint8_t b : signature) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

OptionLibrary filter_options(const std::vector<OptionRecord>& pool, const StateVector& states,
                             const interp::ExecLimits& lim, PipelineStats* stats) {
    if (pool.empty()) throw std::invalid_argument("empty option pool");
    OptionLibrary lib;
    std::map<std::vector<std::uint8_t>, bool> seen;
    int excluded = 0;
    long ticks = 0;
    for (const OptionRecord& rec : pool) {
        if (!is_action_capable(rec.root_kind)) {
            ++excluded;
            continue;
        }
        OptionRecord out = rec;
        long probe_ticks = 0;
        out.signature = action_signature(rec.program, states, lim, &probe_ticks);
        ticks += probe_ticks;
        out.signature_hash = signature_hash(out.signature);
        if (!seen.emplace(out.signature, true).second) continue; // first seen wins
        lib.records.push_back(std::move(out));
    }
    lib.rebuild_index();
    if (stats) {
        stats->pool_size = static_cast<int>(pool.size());
        stats->excluded_non_rollable = excluded;
        stats->state_count = static_cast<int>(states.states.size());
        stats->option_count = static_cast<int>(lib.records.size());
        stats->ticks += ticks;
    }
    return lib;
}

OptionLibrary build_library(const std::vector<dsl::Program>& corpus, tasks::TaskId task, std::uint64_t seed,
                            const interp::ExecLimits& lim, PipelineStats* stats,
                            const tasks::TaskOptions& task_options) {
    std::vector<OptionRecord> pool = extract_option_pool(corpus);
    long collect_ticks = 0;
    StateVector sv = collect_states(pool, task, seed, lim, 300, 700, &collect_ticks, task_options);
    OptionLibrary lib = filter_options(pool, sv, lim, stats);
    if (stats) stats->ticks += collect_ticks;
    return lib;
}

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

void save_options_file(const std::string& path, const OptionLibrary& lib) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write options file: " + path);
    for (const OptionRecord& rec : lib.records) {
        nlohmann::ordered_json j;
        j["program"] = rec.text;
        j["root_kind"] = dsl::to_string(rec.root_kind);
        j["signature_hash"] = hash_hex(rec.signature_hash);
        out << j.dump() << '\n';
    }
}

OptionLibrary load_options_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open options file: " + path);
    OptionLibrary lib;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        OptionRecord rec;
        auto kind = dsl::nonterminal_from_string(j.at("root_kind").get<std::string>());
        if (!kind)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad root_kind");
        rec.root_kind = *kind;
        rec.text = j.at("program").get<std::string>();
        rec.program = dsl::parse_node(rec.root_kind, rec.text);
        if (j.contains("signature_hash"))
            rec.signature_hash = std::stoull(j["signature_hash"].get<std::string>(), nullptr, 16);
        lib.records.push_back(std::move(rec));
    }
    lib.rebuild_index();
    return lib;
}

} // namespace innatecoder::options
