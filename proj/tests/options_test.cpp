#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "innatecoder/dsl/parser.hpp"
#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/dsl/sampler.hpp"
#include "innatecoder/dsl/subtree.hpp"
#include "innatecoder/options/harvest.hpp"
#include "innatecoder/options/options.hpp"

#include "helpers.hpp"

using namespace innatecoder;
using options::CorpusEntry;
using options::EndpointConfig;
using options::HarvestReport;
using options::OptionLibrary;
using options::OptionRecord;
using tasks::TaskId;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

// Replays canned chat-completion responses, as if from the network.
class MockEndpoint {
public:
    explicit MockEndpoint(std::vector<std::string> contents, bool require_key = false)
        : contents_(std::move(contents)), require_key_(require_key) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            if (require_key_ && req.get_header_value("Authorization") != "Bearer good-key") {
                res.status = 401;
                res.set_content("{\"error\":\"bad key\"}", "application/json");
                return;
            }
            std::size_t i = next_.fetch_add(1) % contents_.size();
            nlohmann::json body;
            body["choices"] = {{{"message", {{"role", "assistant"}, {"content", contents_[i]}}}}};
            res.set_content(body.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~MockEndpoint() {
        server_.stop();
        thread_.join();
    }
    EndpointConfig config() const {
        EndpointConfig ep;
        ep.base_url = "http://127.0.0.1:" + std::to_string(port_);
        ep.model = "mock-model";
        return ep;
    }

private:
    httplib::Server server_;
    std::thread thread_;
    std::vector<std::string> contents_;
    bool require_key_;
    int port_ = 0;
    std::atomic<std::size_t> next_{0};
};

std::vector<dsl::Program> tiny_corpus() {
    return {
        dsl::parse("DEF run m( move m)"),
        dsl::parse("DEF run m( WHILE c( frontIsClear c) w( move w) m)"),
    };
}

} // namespace

TEST_CASE("extract_program_tag: first pair wins; absent tag is nullopt") {
    auto got = options::extract_program_tag(
        "Sure! Here is the program:\n<program>DEF run m( move m)</program>\nand <program>junk</program>");
    REQUIRE(got.has_value());
    CHECK(*got == "DEF run m( move m)");
    CHECK_FALSE(options::extract_program_tag("no tags here").has_value());
    CHECK_FALSE(options::extract_program_tag("<program>never closed").has_value());
}

TEST_CASE("harvest_llm: 100 programs against a mock endpoint") {
    MockEndpoint mock({"<program>DEF run m( move m)</program>",
                       "prose first\n<program>DEF run m( turnLeft move m)</program> bye"});
    HarvestReport report;
    auto entries = options::harvest_llm(mock.config(), "", "write a program", 100, report);
    CHECK(report.requested == 100);
    CHECK(report.returned == 100);
    CHECK(report.parsed == 100);
    CHECK(report.discarded == 0);
    CHECK(entries.size() == 100);
    for (const auto& e : entries) CHECK(e.origin == "llm");
}

TEST_CASE("harvest_llm: responses without a tag or with bad syntax are discarded") {
    MockEndpoint mock({"<program>DEF run m( move m)</program>", "I refuse.",
                       "<program>DEF run m( zigzag m)</program>"});
    HarvestReport report;
    auto entries = options::harvest_llm(mock.config(), "", "p", 9, report);
    CHECK(report.parsed == 3);
    CHECK(report.discarded == 6);
    CHECK(report.notes.size() == 6);
    CHECK(entries.size() == 3);
}

TEST_CASE("harvest_llm: auth failure surfaces per-request; zero parsed throws") {
    MockEndpoint mock({"<program>DEF run m( move m)</program>"}, /*require_key=*/true);
    HarvestReport report;
    EndpointConfig ep = mock.config();
    ep.api_key = "wrong";
    CHECK_THROWS_AS(options::harvest_llm(ep, "", "p", 4, report), std::runtime_error);
    CHECK(report.discarded == 4);
    ep.api_key = "good-key";
    HarvestReport ok;
    auto entries = options::harvest_llm(ep, "", "p", 4, ok);
    CHECK(entries.size() == 4);
}

TEST_CASE("corpus files: load, skip bad lines, round-trip") {
    TempFile f("innatecoder_corpus_test.jsonl");
    {
        std::ofstream out(f.path);
        out << R"x({"program": "DEF run m( move m)", "task": "Seeder", "origin": "manual", "seed": 1})x" << '\n';
        out << R"x({"program": "DEF run m( BROKEN m)", "task": "Seeder"})x" << '\n';
        out << "not json at all\n";
        out << R"y({"program": "DEF run m( putMarker m)", "origin": "llm", "model": "x"})y" << '\n';
    }
    std::vector<std::string> skipped;
    auto entries = options::load_corpus(f.path, &skipped);
    REQUIRE(entries.size() == 2);
    CHECK(skipped.size() == 2);
    CHECK(skipped[0].find(":2:") != std::string::npos); // line numbers logged
    CHECK(entries[0].task == "Seeder");

    TempFile g("innatecoder_corpus_roundtrip.jsonl");
    options::save_corpus(g.path, entries);
    auto reloaded = options::load_corpus(g.path);
    REQUIRE(reloaded.size() == entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) CHECK(reloaded[i].program == entries[i].program);

    CHECK_THROWS(options::load_corpus("/nonexistent/corpus.jsonl"));
    TempFile h("innatecoder_corpus_empty.jsonl");
    {
        std::ofstream out(h.path);
        out << "garbage\n";
    }
    CHECK_THROWS(options::load_corpus(h.path));
}

TEST_CASE("extract_option_pool: counts and structural dedup") {
    std::vector<dsl::Program> one{dsl::parse("DEF run m( move m)")};
    auto pool = options::extract_option_pool(one);
    CHECK(pool.size() == 3);

    std::vector<dsl::Program> twice{dsl::parse("DEF run m( move m)"), dsl::parse("DEF run m( move m)")};
    CHECK(options::extract_option_pool(twice).size() == 3);
}

TEST_CASE("extract_option_pool: size equals the brute-force distinct-subtree count") {
    dsl::SamplerConfig cfg;
    Rng rng(12);
    std::vector<dsl::Program> corpus;
    for (int i = 0; i < 30; ++i) corpus.push_back(dsl::sample_program(cfg, rng));
    auto pool = options::extract_option_pool(corpus);
    std::set<std::pair<std::string, std::string>> oracle;
    for (const auto& p : corpus)
        for (const auto& [kind, node] : dsl::subprograms(p))
            oracle.insert(std::make_pair(std::string(dsl::to_string(kind)), dsl::print_node(node)));
    CHECK(pool.size() == oracle.size());
}

TEST_CASE("collect_states: bounds, determinism, contribution") {
    auto pool = options::extract_option_pool(tiny_corpus());
    interp::ExecLimits lim;
    SUBCASE("min=max gives exactly that many states") {
        auto sv = options::collect_states(pool, TaskId::FourCorners, 7, lim, 300, 300);
        CHECK(sv.states.size() == 300);
    }
    SUBCASE("default bounds land inside [300, 700]") {
        auto sv = options::collect_states(pool, TaskId::FourCorners, 7, lim);
        CHECK(sv.states.size() >= 300);
        CHECK(sv.states.size() <= 700);
    }
    SUBCASE("seeded runs are byte-identical") {
        auto a = options::collect_states(pool, TaskId::FourCorners, 7, lim);
        auto b = options::collect_states(pool, TaskId::FourCorners, 7, lim);
        REQUIRE(a.states.size() == b.states.size());
        for (std::size_t i = 0; i < a.states.size(); ++i) REQUIRE(a.states[i] == b.states[i]);
    }
}

TEST_CASE("action_signature: behavior fingerprints") {
    auto pool = options::extract_option_pool(tiny_corpus());
    interp::ExecLimits lim;
    auto sv = options::collect_states(pool, TaskId::FourCorners, 3, lim, 300, 300);

    SUBCASE("a bare action always acts") {
        auto sig = options::action_signature(dsl::make_action(world::Action::Move), sv, lim);
        REQUIRE(sig.size() == 300);
        for (auto b : sig) CHECK(b == static_cast<std::uint8_t>(world::Action::Move));
    }
    SUBCASE("a marker-guarded branch yields all NoAction on a marker-free state set") {
        dsl::Node opt = dsl::parse_node(dsl::NonTerminal::Statement,
                                        "IF c( markersPresent c) i( pickMarker i)");
        auto sig = options::action_signature(opt, sv, lim);
        for (auto b : sig) CHECK(b == options::kNoAction);
    }
    SUBCASE("behaviorally equal options share a signature") {
        dsl::Node a = dsl::parse_node(dsl::NonTerminal::Statement, "move");
        dsl::Node b = dsl::parse_node(dsl::NonTerminal::Statement, "REPEAT R=1 r( move r)");
        CHECK(options::action_signature(a, sv, lim) == options::action_signature(b, sv, lim));
    }
}

TEST_CASE("filter_options: one representative per behavior") {
    interp::ExecLimits lim;
    std::vector<dsl::Program> corpus{dsl::parse("DEF run m( move m)")};
    auto probe_pool = options::extract_option_pool(corpus);
    auto sv = options::collect_states(probe_pool, TaskId::FourCorners, 9, lim, 300, 300);

    auto mk = [](const char* text, dsl::NonTerminal kind) {
        OptionRecord rec;
        rec.root_kind = kind;
        rec.program = dsl::parse_node(kind, text);
        rec.text = text;
        return rec;
    };
    SUBCASE("move, REPEAT R=1 move, turnLeft collapse to two behaviors") {
        std::vector<OptionRecord> pool{mk("move", dsl::NonTerminal::Statement),
                                       mk("REPEAT R=1 r( move r)", dsl::NonTerminal::Statement),
                                       mk("turnLeft", dsl::NonTerminal::Statement)};
        options::PipelineStats stats;
        OptionLibrary lib = options::filter_options(pool, sv, lim, &stats);
        CHECK(lib.records.size() == 2);
        CHECK(lib.records[0].text == "move"); // first seen wins
        CHECK(stats.option_count == 2);
    }
    SUBCASE("non-rollable kinds are excluded before signatures") {
        std::vector<OptionRecord> pool{mk("move", dsl::NonTerminal::Statement),
                                       mk("frontIsClear", dsl::NonTerminal::Perception),
                                       mk("not( markersPresent )", dsl::NonTerminal::Condition),
                                       mk("7", dsl::NonTerminal::Number)};
        options::PipelineStats stats;
        OptionLibrary lib = options::filter_options(pool, sv, lim, &stats);
        CHECK(lib.records.size() == 1);
        CHECK(stats.excluded_non_rollable == 3);
    }
    SUBCASE("the all-NoAction class keeps a single representative") {
        std::vector<OptionRecord> pool{
            mk("IF c( markersPresent c) i( pickMarker i)", dsl::NonTerminal::Statement),
            mk("IF c( markersPresent c) i( move i)", dsl::NonTerminal::Statement),
            mk("move", dsl::NonTerminal::Statement)};
        OptionLibrary lib = options::filter_options(pool, sv, lim, nullptr);
        REQUIRE(lib.records.size() == 2);
        CHECK(lib.records[0].text == "IF c( markersPresent c) i( pickMarker i)");
    }
    SUBCASE("pairwise-distinct signatures, deterministic reruns") {
        dsl::SamplerConfig scfg;
        Rng rng(21);
        std::vector<dsl::Program> corpus2;
        for (int i = 0; i < 20; ++i) corpus2.push_back(dsl::sample_program(scfg, rng));
        auto pool = options::extract_option_pool(corpus2);
        OptionLibrary a = options::filter_options(pool, sv, lim, nullptr);
        OptionLibrary b = options::filter_options(pool, sv, lim, nullptr);
        REQUIRE(a.records.size() == b.records.size());
        std::set<std::vector<std::uint8_t>> sigs;
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].text == b.records[i].text);
            CHECK(sigs.insert(a.records[i].signature).second); // pairwise distinct
        }
    }
}

TEST_CASE("options file round-trip") {
    interp::ExecLimits lim;
    auto corpus = tiny_corpus();
    options::PipelineStats stats;
    OptionLibrary lib = options::build_library(corpus, TaskId::FourCorners, 77, lim, &stats);
    CHECK(stats.state_count >= 300);
    TempFile f("innatecoder_options_test.jsonl");
    options::save_options_file(f.path, lib);
    OptionLibrary back = options::load_options_file(f.path);
    REQUIRE(back.records.size() == lib.records.size());
    for (std::size_t i = 0; i < lib.records.size(); ++i) {
        CHECK(back.records[i].text == lib.records[i].text);
        CHECK(back.records[i].root_kind == lib.records[i].root_kind);
        CHECK(back.records[i].signature_hash == lib.records[i].signature_hash);
        CHECK(dsl::print_node(back.records[i].program) == lib.records[i].text);
    }
}

TEST_CASE("render_prompt substitutes the task description") {
    std::string t = "Intro.\n{{TASK_DESCRIPTION}}\nRules.";
    CHECK(options::render_prompt(t, "Do the thing.") == "Intro.\nDo the thing.\nRules.");
    CHECK_THROWS(options::render_prompt("no placeholder", "x"));
}
