#include "innatecoder/search/search.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/dsl/subtree.hpp"

namespace innatecoder::search {

const char* to_string(Method m) {
    switch (m) {
        case Method::IC: return "IC";
        case Method::SHC: return "SHC";
        case Method::LISS_O: return "LISS-o";
        case Method::LISS_R: return "LISS-r";
        case Method::FM: return "FM";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
    if (s == "IC") return Method::IC;
    if (s == "SHC") return Method::SHC;
    if (s == "LISS-o" || s == "LISS_O" || s == "LISSo") return Method::LISS_O;
    if (s == "LISS-r" || s == "LISS_R" || s == "LISSr") return Method::LISS_R;
    if (s == "FM") return Method::FM;
    return std::nullopt;
}

namespace {

// Per-draw stream tags. Syntax and semantic draws share the node and content
// streams, so a semantic fallback (or epsilon=1 mixing) reproduces the exact
// syntax draw.
enum StreamTag : std::uint64_t { kMixStream = 0, kNodeStream = 1, kContentStream = 2, kOptionStream = 3 };

dsl::Program one_syntax_draw(const dsl::Program& n, const dsl::SamplerConfig& cfg, std::uint64_t draw_seed) {
    Rng node_rng(derive_seed(draw_seed, kNodeStream));
    dsl::NodeHandle at = dsl::random_nonterminal_node(n, node_rng);
    Rng content_rng(derive_seed(draw_seed, kContentStream));
    dsl::Node subtree = dsl::sample_subtree(dsl::node_at(n.root(), at).kind, cfg, content_rng);
    return dsl::replace_subtree(n, at, subtree);
}

std::pair<dsl::Program, MoveKind> one_semantic_draw(const dsl::Program& n,
                                                    const options::OptionLibrary& omega,
                                                    const dsl::SamplerConfig& cfg, std::uint64_t draw_seed) {
    Rng node_rng(derive_seed(draw_seed, kNodeStream));
    dsl::NodeHandle at = dsl::random_nonterminal_node(n, node_rng);
    dsl::NonTerminal kind = dsl::node_at(n.root(), at).kind;
    const std::vector<int>& candidates = omega.matching(kind);
    if (candidates.empty()) {
        Rng content_rng(derive_seed(draw_seed, kContentStream));
        dsl::Node subtree = dsl::sample_subtree(kind, cfg, content_rng);
        return {dsl::replace_subtree(n, at, subtree), MoveKind::SyntaxFallback};
    }
    Rng option_rng(derive_seed(draw_seed, kOptionStream));
    int pick = candidates[static_cast<std::size_t>(option_rng.uniform_int(static_cast<int>(candidates.size())))];
    const options::OptionRecord& rec = omega.records[static_cast<std::size_t>(pick)];
    return {dsl::replace_subtree(n, at, rec.program), MoveKind::Semantic};
}

} // namespace

NeighborBatch syntax_neighbors(const dsl::Program& n, int k, const dsl::SamplerConfig& cfg,
                               std::uint64_t seed) {
    NeighborBatch out;
    out.programs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        out.programs.push_back(one_syntax_draw(n, cfg, derive_seed(seed, static_cast<std::uint64_t>(j))));
        out.kinds.push_back(MoveKind::Syntax);
    }
    return out;
}

NeighborBatch semantic_neighbors(const dsl::Program& n, int k, const options::OptionLibrary& omega,
                                 const dsl::SamplerConfig& cfg, std::uint64_t seed) {
    NeighborBatch out;
    out.programs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto [p, kind] = one_semantic_draw(n, omega, cfg, derive_seed(seed, static_cast<std::uint64_t>(j)));
        out.programs.push_back(std::move(p));
        out.kinds.push_back(kind);
    }
    return out;
}

NeighborBatch mixed_neighbors(const dsl::Program& n, int k, const options::OptionLibrary& omega,
                              const dsl::SamplerConfig& cfg, double epsilon, std::uint64_t seed) {
    NeighborBatch out;
    out.programs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        std::uint64_t draw_seed = derive_seed(seed, static_cast<std::uint64_t>(j));
        Rng mix(derive_seed(draw_seed, kMixStream));
        if (mix.bernoulli(epsilon)) {
            out.programs.push_back(one_syntax_draw(n, cfg, draw_seed));
            out.kinds.push_back(MoveKind::Syntax);
        } else {
            auto [p, kind] = one_semantic_draw(n, omega, cfg, draw_seed);
            out.programs.push_back(std::move(p));
            out.kinds.push_back(kind);
        }
    }
    return out;
}

std::pair<double, long> evaluate(const dsl::Program& p, const std::vector<tasks::TaskInstance>& eval,
                                 const interp::ExecLimits& lim, long* ticks) {
    if (eval.empty()) throw std::invalid_argument("empty evaluation set");
    double total = 0.0;
    for (const tasks::TaskInstance& inst : eval) {
        tasks::TaskInstance live = inst;
        interp::EpisodeResult res = interp::run_episode(p, live, lim);
        total += res.episodic_return;
        if (ticks) *ticks += res.ticks;
    }
    return {total / static_cast<double>(eval.size()), static_cast<long>(eval.size())};
}

namespace {

void note_curve(SearchRun& run) {
    run.curve.push_back({run.episodes_consumed, run.best_value});
}

void consider_best(SearchRun& run, const dsl::Program& p, double value, bool& has_best) {
    if (!has_best || value > run.best_value) {
        run.best_program = p;
        run.best_value = value;
        has_best = true;
    }
}

bool has_best_flag(const SearchRun& run) {
    return !run.curve.empty();
}

} // namespace

ClimbOutcome climb(const SearchConfig& cfg, const options::OptionLibrary* omega, dsl::Program start,
                   const std::vector<tasks::TaskInstance>& eval, int restart_index, long& remaining,
                   SearchRun& run) {
    const long eval_cost = static_cast<long>(eval.size());
    bool has_best = has_best_flag(run);

    ClimbOutcome out{std::move(start), 0.0, false};
    {
        auto [v, eps] = evaluate(out.incumbent, eval, cfg.limits, &run.ticks);
        remaining -= eps;
        run.episodes_consumed += eps;
        out.value = v;
        consider_best(run, out.incumbent, v, has_best);
        note_curve(run);
    }

    for (int iter = 0;; ++iter) {
        int batch_k = static_cast<int>(std::min<long>(cfg.k, remaining / eval_cost));
        if (batch_k <= 0) {
            out.budget_exhausted = true;
            return out;
        }
        std::uint64_t batch_seed =
            derive_seed(cfg.master_seed, 0xbeefULL, static_cast<std::uint64_t>(restart_index),
                        static_cast<std::uint64_t>(iter));
        NeighborBatch batch =
            omega ? mixed_neighbors(out.incumbent, batch_k, *omega, cfg.sampler, cfg.epsilon, batch_seed)
                  : syntax_neighbors(out.incumbent, batch_k, cfg.sampler, batch_seed);

        int arg_best = -1;
        double batch_best = 0.0;
        for (int j = 0; j < batch_k; ++j) {
            auto [v, eps] = evaluate(batch.programs[static_cast<std::size_t>(j)], eval, cfg.limits, &run.ticks);
            remaining -= eps;
            run.episodes_consumed += eps;
            if (arg_best < 0 || v > batch_best) { // strict: ties keep the lowest index
                arg_best = j;
                batch_best = v;
            }
        }
        consider_best(run, batch.programs[static_cast<std::size_t>(arg_best)], batch_best, has_best);
        note_curve(run);

        if (batch_best > out.value) {
            out.incumbent = std::move(batch.programs[static_cast<std::size_t>(arg_best)]);
            out.value = batch_best;
            run.accepted.push_back({restart_index, iter, batch_best, out.incumbent});
        } else {
            return out; // local optimum
        }
    }
}

namespace {

// LISS-o bookkeeping: the growing option set plus the signature registry and
// the lazily built probe-state vector.
struct OnlineLibrary {
    options::OptionLibrary omega;
    std::optional<options::StateVector> states;
    std::map<std::vector<std::uint8_t>, bool> seen_signatures;

    void augment(const dsl::Program& restart_best, const SearchConfig& cfg, SearchRun& run) {
        std::vector<dsl::Program> one{restart_best};
        std::vector<options::OptionRecord> pool = options::extract_option_pool(one);
        if (!states) {
            bool any_rollable = false;
            for (const auto& rec : pool)
                if (options::is_action_capable(rec.root_kind)) any_rollable = true;
            if (!any_rollable) return;
            states = options::collect_states(pool, cfg.task, derive_seed(cfg.master_seed, 0x5157ULL),
                                             cfg.limits, 300, 700, &run.pipeline.ticks, cfg.task_options);
            run.pipeline.state_count = static_cast<int>(states->states.size());
        }
        for (options::OptionRecord& rec : pool) {
            run.pipeline.pool_size++;
            if (!options::is_action_capable(rec.root_kind)) {
                run.pipeline.excluded_non_rollable++;
                continue;
            }
            rec.signature = options::action_signature(rec.program, *states, cfg.limits, &run.pipeline.ticks);
            rec.signature_hash = options::signature_hash(rec.signature);
            if (!seen_signatures.emplace(rec.signature, true).second) continue;
            omega.records.push_back(std::move(rec));
        }
        omega.rebuild_index();
        run.pipeline.option_count = static_cast<int>(omega.records.size());
    }
};

SearchRun shc_impl(const SearchConfig& cfg, const options::OptionLibrary* fixed_omega,
                   OnlineLibrary* online) {
    if (cfg.eval_set_size < 1) throw std::invalid_argument("eval_set_size must be >= 1");
    if (cfg.episode_budget < cfg.eval_set_size)
        throw std::invalid_argument("episode budget cannot pay for a single evaluation");
    cfg.sampler.validate();

    std::vector<tasks::TaskInstance> eval =
        tasks::eval_set(cfg.task, cfg.master_seed, cfg.eval_set_size, cfg.task_options);

    SearchRun run;
    long remaining = cfg.episode_budget;
    for (int restart = 0; remaining >= static_cast<long>(eval.size()); ++restart) {
        run.restarts = restart + 1;
        Rng init_rng(derive_seed(cfg.master_seed, 0x1417ULL, static_cast<std::uint64_t>(restart)));
        dsl::Program start = dsl::sample_program(cfg.sampler, init_rng);
        const options::OptionLibrary* omega = online ? &online->omega : fixed_omega;
        ClimbOutcome outcome = climb(cfg, omega, std::move(start), eval, restart, remaining, run);
        if (outcome.budget_exhausted) break;
        if (online) online->augment(outcome.incumbent, cfg, run);
    }
    return run;
}

// Omega indices whose option appears as a subtree of the final program.
std::vector<int> options_appearing_in(const dsl::Program& p, const options::OptionLibrary& omega) {
    std::map<std::pair<dsl::NonTerminal, std::string>, int> lookup;
    for (int i = 0; i < static_cast<int>(omega.records.size()); ++i) {
        const auto& rec = omega.records[static_cast<std::size_t>(i)];
        lookup.emplace(std::make_pair(rec.root_kind, rec.text), i);
    }
    std::vector<int> used;
    for (const auto& [kind, node] : dsl::subprograms(p)) {
        auto it = lookup.find({kind, dsl::print_node(node)});
        if (it != lookup.end()) used.push_back(it->second);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return used;
}

SearchRun run_fm(const SearchConfig& cfg, const std::vector<dsl::Program>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("FM requires a non-empty corpus");
    std::vector<tasks::TaskInstance> eval =
        tasks::eval_set(cfg.task, cfg.master_seed, cfg.eval_set_size, cfg.task_options);
    SearchRun run;
    bool has_best = false;
    for (const dsl::Program& p : corpus) {
        auto [v, eps] = evaluate(p, eval, cfg.limits, &run.ticks);
        run.episodes_consumed += eps;
        consider_best(run, p, v, has_best);
    }
    run.curve.push_back({run.episodes_consumed, run.best_value});
    return run;
}

} // namespace

SearchRun shc(const SearchConfig& cfg, const options::OptionLibrary* omega) {
    return shc_impl(cfg, omega, nullptr);
}

SearchRun run_method(const SearchConfig& cfg, const std::vector<dsl::Program>* corpus,
                     const options::OptionLibrary* omega) {
    switch (cfg.method) {
        case Method::SHC:
            return shc_impl(cfg, nullptr, nullptr);
        case Method::FM: {
            if (!corpus) throw std::invalid_argument("FM requires a corpus");
            return run_fm(cfg, *corpus);
        }
        case Method::IC: {
            options::OptionLibrary built;
            options::PipelineStats stats;
            const options::OptionLibrary* use = omega;
            if (!use) {
                if (!corpus) throw std::invalid_argument("IC requires an option library or a corpus");
                built = options::build_library(*corpus, cfg.task, derive_seed(cfg.master_seed, 0x5157ULL),
                                               cfg.limits, &stats, cfg.task_options);
                use = &built;
            }
            SearchRun run = shc_impl(cfg, use, nullptr);
            run.pipeline = stats;
            run.pipeline.option_count = static_cast<int>(use->records.size());
            run.options_used = options_appearing_in(run.best_program, *use);
            return run;
        }
        case Method::LISS_R: {
            int count = corpus ? static_cast<int>(corpus->size()) : cfg.liss_r_corpus_size;
            Rng rng(derive_seed(cfg.master_seed, 0x115eULL));
            std::vector<dsl::Program> sampled;
            sampled.reserve(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) sampled.push_back(dsl::sample_program(cfg.sampler, rng));
            options::PipelineStats stats;
            options::OptionLibrary built =
                options::build_library(sampled, cfg.task, derive_seed(cfg.master_seed, 0x5157ULL),
                                       cfg.limits, &stats, cfg.task_options);
            SearchRun run = shc_impl(cfg, &built, nullptr);
            run.pipeline = stats;
            run.options_used = options_appearing_in(run.best_program, built);
            return run;
        }
        case Method::LISS_O: {
            OnlineLibrary online;
            SearchRun run = shc_impl(cfg, nullptr, &online);
            run.options_used = options_appearing_in(run.best_program, online.omega);
            return run;
        }
    }
    throw std::invalid_argument("unknown method");
}

} // namespace innatecoder::search
