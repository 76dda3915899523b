#include <doctest.h>

#include <map>
#include <set>

#include "innatecoder/dsl/parser.hpp"
#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/dsl/subtree.hpp"
#include "innatecoder/search/report.hpp"
#include "innatecoder/search/search.hpp"

#include "helpers.hpp"

using namespace innatecoder;
using options::OptionLibrary;
using options::OptionRecord;
using search::Method;
using search::MoveKind;
using search::SearchConfig;
using search::SearchRun;
using tasks::TaskId;

namespace {

OptionRecord option_of(const char* text, dsl::NonTerminal kind) {
    OptionRecord rec;
    rec.root_kind = kind;
    rec.program = dsl::parse_node(kind, text);
    rec.text = text;
    return rec;
}

OptionLibrary library_of(std::initializer_list<std::pair<const char*, dsl::NonTerminal>> items) {
    OptionLibrary lib;
    for (auto& [text, kind] : items) lib.records.push_back(option_of(text, kind));
    lib.rebuild_index();
    return lib;
}

} // namespace

TEST_CASE("syntax_neighbors: k=0 gives an empty batch") {
    dsl::Program n = dsl::parse("DEF run m( move m)");
    auto batch = search::syntax_neighbors(n, 0, {}, 1);
    CHECK(batch.programs.empty());
}

TEST_CASE("syntax_neighbors: every neighbor reparses (well-formedness fuzz)") {
    dsl::SamplerConfig cfg;
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        dsl::Program n = dsl::sample_program(cfg, rng);
        auto batch = search::syntax_neighbors(n, 40, cfg, 1000 + static_cast<std::uint64_t>(i));
        for (const auto& p : batch.programs) CHECK(dsl::parse(dsl::print(p)) == p);
    }
}

TEST_CASE("syntax_neighbors: depth-1 reachable set equals brute-force single-node replacements") {
    dsl::SamplerConfig cfg;
    cfg.max_depth = 1;
    dsl::Program n = dsl::parse("DEF run m( move m)");

    // oracle: all single-node replacements with depth-1 subtrees
    std::set<std::string> oracle;
    for (dsl::NodeHandle h = 0; h < dsl::node_count(n.root()); ++h) {
        auto kind = dsl::node_at(n.root(), h).kind;
        for (const dsl::Node& sub : testutil::enumerate_subtrees(kind, 1, cfg.number_cap))
            oracle.insert(dsl::print(dsl::replace_subtree(n, h, sub)));
    }

    std::set<std::string> reached;
    auto batch = search::syntax_neighbors(n, 20000, cfg, 99);
    for (const auto& p : batch.programs) reached.insert(dsl::print(p));
    CHECK(reached == oracle);
}

TEST_CASE("semantic_neighbors: matching rule and fallback") {
    dsl::SamplerConfig cfg;
    OptionLibrary omega = library_of({{"putMarker", dsl::NonTerminal::Action},
                                      {"turnLeft move", dsl::NonTerminal::Statement}});
    dsl::Program n = dsl::parse("DEF run m( WHILE c( frontIsClear c) w( move w) m)");

    auto batch = search::semantic_neighbors(n, 10000, omega, cfg, 5);
    int semantic = 0, fallback = 0;
    for (std::size_t j = 0; j < batch.programs.size(); ++j) {
        CHECK(dsl::parse(dsl::print(batch.programs[j])) == batch.programs[j]);
        if (batch.kinds[j] == MoveKind::Semantic) ++semantic;
        if (batch.kinds[j] == MoveKind::SyntaxFallback) ++fallback;
    }
    // the program has Condition/Perception nodes, which no option can match
    CHECK(semantic > 0);
    CHECK(fallback > 0);
    CHECK(semantic + fallback == 10000);
}

TEST_CASE("semantic_neighbors: substitutions insert the chosen option verbatim") {
    dsl::SamplerConfig cfg;
    OptionLibrary omega = library_of({{"putMarker", dsl::NonTerminal::Action}});
    dsl::Program n = dsl::parse("DEF run m( move m)");
    auto batch = search::semantic_neighbors(n, 200, omega, cfg, 6);
    int with_put = 0;
    for (std::size_t j = 0; j < batch.programs.size(); ++j) {
        if (batch.kinds[j] != MoveKind::Semantic) continue;
        // the only Action option is putMarker; an Action-node substitution
        // must produce exactly this program
        CHECK(dsl::print(batch.programs[j]) == "DEF run m( putMarker m)");
        ++with_put;
    }
    CHECK(with_put > 0);
}

TEST_CASE("mixed_neighbors: epsilon=1 reproduces syntax_neighbors exactly") {
    dsl::SamplerConfig cfg;
    OptionLibrary omega = library_of({{"putMarker", dsl::NonTerminal::Action}});
    dsl::Program n = dsl::parse("DEF run m( WHILE c( frontIsClear c) w( move w) m)");
    auto mixed = search::mixed_neighbors(n, 500, omega, cfg, 1.0, 77);
    auto syntax = search::syntax_neighbors(n, 500, cfg, 77);
    REQUIRE(mixed.programs.size() == syntax.programs.size());
    for (std::size_t j = 0; j < mixed.programs.size(); ++j) {
        CHECK(mixed.programs[j] == syntax.programs[j]);
        CHECK(mixed.kinds[j] == MoveKind::Syntax);
    }
}

TEST_CASE("mixed_neighbors: epsilon=0 with full node-kind coverage is all semantic") {
    dsl::SamplerConfig cfg;
    OptionLibrary omega = library_of({{"putMarker", dsl::NonTerminal::Action},
                                      {"move move", dsl::NonTerminal::Statement},
                                      {"DEF run m( turnLeft m)", dsl::NonTerminal::Program}});
    dsl::Program n = dsl::parse("DEF run m( move m)"); // only Program/Statement/Action nodes
    auto batch = search::mixed_neighbors(n, 2000, omega, cfg, 0.0, 13);
    for (auto kind : batch.kinds) CHECK(kind == MoveKind::Semantic);
}

TEST_CASE("mixed_neighbors: epsilon=0.4 syntax fraction within [0.37, 0.43] over 10^4 draws") {
    dsl::SamplerConfig cfg;
    OptionLibrary omega = library_of({{"putMarker", dsl::NonTerminal::Action},
                                      {"move move", dsl::NonTerminal::Statement},
                                      {"DEF run m( turnLeft m)", dsl::NonTerminal::Program}});
    dsl::Program n = dsl::parse("DEF run m( move m)");
    auto batch = search::mixed_neighbors(n, 10000, omega, cfg, 0.4, 21);
    int syntax = 0;
    for (auto kind : batch.kinds)
        if (kind == MoveKind::Syntax) ++syntax;
    double frac = syntax / 10000.0;
    CHECK(frac >= 0.37);
    CHECK(frac <= 0.43);
}

TEST_CASE("evaluate: single instance, zero variance, arithmetic oracle") {
    interp::ExecLimits lim;
    dsl::Program p = dsl::parse("DEF run m( putMarker m)");
    auto eval1 = tasks::eval_set(TaskId::Seeder, 5, 1);
    auto [v1, e1] = search::evaluate(p, eval1, lim);
    CHECK(e1 == 1);
    CHECK(v1 == doctest::Approx(1.0 / 64.0));

    // identical instances: zero variance, mean equals each episode's return
    std::vector<tasks::TaskInstance> same(4, eval1[0]);
    auto [v4, e4] = search::evaluate(p, same, lim);
    CHECK(e4 == 4);
    CHECK(v4 == doctest::Approx(v1));

    auto eval8 = tasks::eval_set(TaskId::Seeder, 5, 8);
    double manual = 0;
    for (const auto& inst : eval8) {
        tasks::TaskInstance live = inst;
        manual += interp::run_episode(p, live, lim).episodic_return;
    }
    auto [v8, e8] = search::evaluate(p, eval8, lim);
    CHECK(e8 == 8);
    CHECK(v8 == doctest::Approx(manual / 8.0));
}

TEST_CASE("shc: budget accounting, monotone curve, strict improvement per restart") {
    SearchConfig cfg;
    cfg.task = TaskId::Seeder;
    cfg.k = 25;
    cfg.eval_set_size = 2;
    cfg.episode_budget = 3000;
    cfg.master_seed = 17;
    SearchRun run = search::shc(cfg, nullptr);

    CHECK(run.episodes_consumed <= cfg.episode_budget);
    CHECK(run.episodes_consumed % cfg.eval_set_size == 0);
    double prev = -2;
    for (const auto& pt : run.curve) {
        CHECK(pt.best_value >= prev);
        prev = pt.best_value;
        CHECK(pt.episodes <= cfg.episode_budget);
    }
    std::map<int, double> last_by_restart;
    for (const auto& mv : run.accepted) {
        auto it = last_by_restart.find(mv.restart);
        if (it != last_by_restart.end()) CHECK(mv.value > it->second);
        last_by_restart[mv.restart] = mv.value;
    }
    CHECK(run.restarts >= 1);
    CHECK(run.best_value == run.curve.back().best_value);
}

TEST_CASE("shc: a budget smaller than one evaluation is an error") {
    SearchConfig cfg;
    cfg.eval_set_size = 8;
    cfg.episode_budget = 7;
    CHECK_THROWS_AS(search::shc(cfg, nullptr), std::invalid_argument);
}

TEST_CASE("shc: deterministic given the config") {
    SearchConfig cfg;
    cfg.task = TaskId::TopOff;
    cfg.k = 20;
    cfg.eval_set_size = 2;
    cfg.episode_budget = 2000;
    cfg.master_seed = 29;
    SearchRun a = search::shc(cfg, nullptr);
    SearchRun b = search::shc(cfg, nullptr);
    CHECK(a.best_value == b.best_value);
    CHECK(a.best_program == b.best_program);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t i = 0; i < a.curve.size(); ++i) {
        CHECK(a.curve[i].episodes == b.curve[i].episodes);
        CHECK(a.curve[i].best_value == b.curve[i].best_value);
    }
}

TEST_CASE("climb: accepted values match the exhaustive best-neighbor oracle") {
    SearchConfig cfg;
    cfg.task = TaskId::Seeder;
    cfg.k = 100000; // covers the depth-2 neighborhood with overwhelming probability
    cfg.eval_set_size = 2;
    cfg.episode_budget = 2000000;
    cfg.master_seed = 3;
    cfg.sampler.max_depth = 2;
    cfg.sampler.number_cap = 2;

    auto eval = tasks::eval_set(cfg.task, cfg.master_seed, cfg.eval_set_size);
    auto value_of = [&](const dsl::Program& p) {
        return search::evaluate(p, eval, cfg.limits).first;
    };

    SearchRun run;
    long remaining = cfg.episode_budget;
    auto outcome = search::climb(cfg, nullptr, dsl::parse("DEF run m( move m)"), eval, 0, remaining, run);
    REQUIRE_FALSE(outcome.budget_exhausted);

    // replay the ascent; at every accepted move the value must equal the max
    // over the complete neighborhood, and the final incumbent must be a true
    // local optimum
    dsl::Program cur = dsl::parse("DEF run m( move m)");
    double cur_value = value_of(cur);
    auto full_best = [&](const dsl::Program& base) {
        double best = -2;
        std::set<std::string> tried;
        for (dsl::NodeHandle h = 0; h < dsl::node_count(base.root()); ++h) {
            auto kind = dsl::node_at(base.root(), h).kind;
            for (const dsl::Node& sub :
                 testutil::enumerate_subtrees(kind, cfg.sampler.max_depth, cfg.sampler.number_cap)) {
                dsl::Program q = dsl::replace_subtree(base, h, sub);
                if (!tried.insert(dsl::print(q)).second) continue;
                best = std::max(best, value_of(q));
            }
        }
        return best;
    };
    for (const auto& mv : run.accepted) {
        double oracle_best = full_best(cur);
        CHECK(mv.value == doctest::Approx(oracle_best));
        CHECK(mv.value > cur_value);
        cur = mv.program;
        cur_value = mv.value;
    }
    CHECK(cur_value == doctest::Approx(outcome.value));
    CHECK(full_best(cur) <= cur_value); // genuine local optimum
}

TEST_CASE("run_method FM: argmax over the corpus with a flat curve") {
    SearchConfig cfg;
    cfg.task = TaskId::Maze;
    cfg.eval_set_size = 4;
    cfg.method = Method::FM;
    cfg.master_seed = 8;
    // a right-hand wall follower solves every perfect maze
    std::vector<dsl::Program> corpus{
        dsl::parse("DEF run m( move m)"),
        dsl::parse("DEF run m( WHILE c( noMarkersPresent c) w( IFELSE c( rightIsClear c) i( turnRight "
                   "move i) ELSE e( IFELSE c( frontIsClear c) i( move i) ELSE e( turnLeft e) e) w) m)"),
        dsl::parse("DEF run m( turnLeft m)"),
    };
    SearchRun run = search::run_method(cfg, &corpus);
    CHECK(run.best_value == doctest::Approx(1.0));
    CHECK(run.episodes_consumed == static_cast<long>(corpus.size()) * cfg.eval_set_size);
    REQUIRE(run.curve.size() == 1);
    CHECK(run.curve[0].best_value == doctest::Approx(1.0));
    CHECK(dsl::print(run.best_program).find("rightIsClear") != std::string::npos);
}

TEST_CASE("run_method LISS-o: identical to SHC while the option set is empty") {
    SearchConfig cfg;
    cfg.task = TaskId::Seeder;
    cfg.k = 10;
    cfg.eval_set_size = 2;
    cfg.master_seed = 55;
    // budget ends inside the first restart: one init + one partial batch
    cfg.episode_budget = 2 * (1 + 10);
    cfg.method = Method::LISS_O;
    SearchRun liss = search::run_method(cfg);
    cfg.method = Method::SHC;
    SearchRun shc_run = search::run_method(cfg);
    CHECK(liss.best_value == shc_run.best_value);
    CHECK(liss.best_program == shc_run.best_program);
    REQUIRE(liss.curve.size() == shc_run.curve.size());
    for (std::size_t i = 0; i < liss.curve.size(); ++i)
        CHECK(liss.curve[i].best_value == shc_run.curve[i].best_value);
}

TEST_CASE("run_method IC: an outright-solving option makes IC no slower than SHC (paired seeds)") {
    // Omega contains a full climbing routine for the stair task; IC should
    // reach 1.0 at least as early as SHC on most paired seeds.
    OptionLibrary omega = library_of({
        {"move turnRight move turnLeft", dsl::NonTerminal::Statement},
        {"WHILE c( noMarkersPresent c) w( move turnRight move turnLeft w)", dsl::NonTerminal::Statement},
        {"putMarker", dsl::NonTerminal::Action},
    });
    int ic_no_later = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SearchConfig cfg;
        cfg.task = TaskId::StairClimber;
        cfg.k = 50;
        cfg.eval_set_size = 2;
        cfg.episode_budget = 20000;
        cfg.master_seed = 1000 + seed;

        cfg.method = Method::IC;
        SearchRun ic = search::run_method(cfg, nullptr, &omega);
        cfg.method = Method::SHC;
        SearchRun shc_run = search::run_method(cfg);

        auto first_solve = [](const SearchRun& r) {
            for (const auto& pt : r.curve)
                if (pt.best_value >= 0.999) return pt.episodes;
            return std::numeric_limits<long>::max();
        };
        if (first_solve(ic) <= first_solve(shc_run)) ++ic_no_later;
    }
    CHECK(ic_no_later >= 4);
}

TEST_CASE("run_method IC: options_used lists options embedded in the winner") {
    OptionLibrary omega = library_of({
        {"WHILE c( noMarkersPresent c) w( move turnRight move turnLeft w)", dsl::NonTerminal::Statement},
    });
    SearchConfig cfg;
    cfg.task = TaskId::StairClimber;
    cfg.k = 40;
    cfg.eval_set_size = 2;
    cfg.episode_budget = 20000;
    cfg.master_seed = 4;
    cfg.method = Method::IC;
    SearchRun run = search::run_method(cfg, nullptr, &omega);
    if (run.best_value >= 0.999) {
        // the winner embeds the climbing loop unless pure syntax luck found it
        std::string text = dsl::print(run.best_program);
        if (text.find("move turnRight move turnLeft") != std::string::npos)
            CHECK(run.options_used == std::vector<int>{0});
    }
}

TEST_CASE("curves CSV and summary round-trip") {
    search::RunRecord rec;
    rec.seed = 3;
    rec.method = Method::SHC;
    rec.task = TaskId::Maze;
    rec.run.curve = {{16, 0.125}, {4000, 0.5}, {8000, 1.0}};
    rec.run.best_value = 1.0;
    search::RunRecord rec2 = rec;
    rec2.seed = 4;
    rec2.run.curve = {{16, 0.0}, {8000, 0.75}};

    std::string csv = search::curves_to_csv({rec, rec2});
    CHECK(csv.rfind("seed,method,task,episodes,best_return\n", 0) == 0);
    CHECK(csv.find("3,SHC,Maze,8000,1\n") != std::string::npos);

    auto tmp = testutil::fixture_path("../build/tmp_curves_test.csv");
    search::write_curves_csv(tmp, {rec, rec2});
    auto rows = search::read_curves_csv(tmp);
    REQUIRE(rows.size() == 5);
    auto summary = search::summarize(rows);
    const auto& cell = summary.at("Maze").at("SHC");
    CHECK(cell.seeds == 2);
    CHECK(cell.mean == doctest::Approx((1.0 + 0.75) / 2));
    CHECK(cell.ci95 == doctest::Approx(1.96 * std::sqrt(2.0 * 0.125 * 0.125) / std::sqrt(2.0)));
    std::string svg = search::chart_svg(rows, "Maze");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("SHC") != std::string::npos);
    std::remove(tmp.c_str());
}
