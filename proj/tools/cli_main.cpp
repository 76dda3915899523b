// Experiment driver: harvest programs, build option sets, run searches, and
// report results.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "innatecoder/dsl/printer.hpp"
#include "innatecoder/options/harvest.hpp"
#include "innatecoder/options/options.hpp"
#include "innatecoder/search/report.hpp"
#include "innatecoder/search/search.hpp"

namespace fs = std::filesystem;
using namespace innatecoder;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<tasks::TaskId> parse_tasks(const std::string& arg) {
    if (arg == "all") return tasks::all_tasks();
    std::vector<tasks::TaskId> out;
    for (const std::string& name : split_list(arg)) {
        auto id = tasks::task_from_string(name);
        if (!id) throw CLI::ValidationError("--tasks", "unknown task: " + name);
        out.push_back(*id);
    }
    if (out.empty()) throw CLI::ValidationError("--tasks", "no tasks given");
    return out;
}

std::vector<search::Method> parse_methods(const std::string& arg) {
    std::vector<search::Method> out;
    for (const std::string& name : split_list(arg)) {
        auto m = search::method_from_string(name);
        if (!m) throw CLI::ValidationError("--methods", "unknown method: " + name);
        out.push_back(*m);
    }
    if (out.empty()) throw CLI::ValidationError("--methods", "no methods given");
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& seeds, int num_seeds, std::uint64_t base) {
    std::vector<std::uint64_t> out;
    if (!seeds.empty()) {
        for (const std::string& s : split_list(seeds)) out.push_back(std::stoull(s));
    } else {
        for (int i = 0; i < num_seeds; ++i) out.push_back(base + static_cast<std::uint64_t>(i));
    }
    if (out.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
    std::set<std::uint64_t> uniq(out.begin(), out.end());
    if (uniq.size() != out.size()) throw CLI::ValidationError("--seeds", "seeds must be distinct");
    return out;
}

// Shared search knobs, wired to both the config file and flags.
struct SearchKnobs {
    int k = 1000;
    double epsilon = 0.4;
    long budget = 100000;
    int eval_size = 8;
    int max_depth = 6;
    int number_cap = 19;
    int max_actions = 250;
    long max_ticks = 100000;
    double crash_penalty = 0.0;
    int liss_r_count = 100;
    std::string weights_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", k, "neighbors per search iteration");
        cmd->add_option("--epsilon", epsilon, "syntax-move probability in the mixture")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--budget", budget, "episode budget per run");
        cmd->add_option("--eval-size", eval_size, "initial states per evaluation");
        cmd->add_option("--max-depth", max_depth, "sampler statement-depth budget");
        cmd->add_option("--number-cap", number_cap, "largest sampled repeat count");
        cmd->add_option("--max-actions", max_actions, "per-episode action budget");
        cmd->add_option("--max-ticks", max_ticks, "per-episode interpreter tick budget");
        cmd->add_option("--crash-penalty", crash_penalty, "extra reward applied when an episode crashes");
        cmd->add_option("--liss-r-count", liss_r_count, "sampler corpus size for LISS-r without a corpus");
        cmd->add_option("--weights-file", weights_file, "production-weights table (key=value file)");
    }

    search::SearchConfig to_config() const {
        search::SearchConfig cfg;
        cfg.k = k;
        cfg.epsilon = epsilon;
        cfg.episode_budget = budget;
        cfg.eval_set_size = eval_size;
        cfg.sampler.max_depth = max_depth;
        cfg.sampler.number_cap = number_cap;
        if (!weights_file.empty()) cfg.sampler.weights = dsl::load_weights_file(weights_file);
        cfg.limits.max_actions = max_actions;
        cfg.limits.max_ticks = max_ticks;
        cfg.task_options.crash_penalty = crash_penalty;
        cfg.liss_r_corpus_size = liss_r_count;
        return cfg;
    }
};

int cmd_harvest(const std::string& out_path, const std::string& from_corpus, const std::string& task,
                const std::string& endpoint_url, const std::string& model, const std::string& prompts_dir,
                const std::string& prompt_info, int n, double temperature, int in_flight) {
    if (!from_corpus.empty()) {
        std::vector<std::string> skipped;
        auto entries = options::load_corpus(from_corpus, &skipped);
        for (const auto& s : skipped) std::cerr << "skipped: " << s << '\n';
        fs::copy_file(from_corpus, out_path, fs::copy_options::overwrite_existing);
        std::cout << "copied " << entries.size() << " programs (" << skipped.size()
                  << " skipped lines) to " << out_path << '\n';
        return 0;
    }
    if (task.empty()) throw CLI::ValidationError("--task", "required unless --from-corpus is used");
    if (endpoint_url.empty()) throw CLI::ValidationError("--endpoint", "required unless --from-corpus is used");

    options::EndpointConfig ep;
    ep.base_url = endpoint_url;
    ep.model = model;
    ep.temperature = temperature;
    ep.max_in_flight = in_flight;
    if (const char* key = std::getenv("INNATECODER_API_KEY")) ep.api_key = key;

    std::string tmpl = read_file(prompts_dir + "/template.txt");
    std::string desc = read_file(prompts_dir + "/" + prompt_info + "_info/" + task + ".txt");
    std::string prompt = options::render_prompt(tmpl, desc);

    options::HarvestReport report;
    auto entries = options::harvest_llm(ep, "", prompt, n, report);
    for (auto& e : entries) e.task = task;
    options::save_corpus(out_path, entries);
    for (const auto& note : report.notes) std::cerr << note << '\n';
    std::cout << report.summary() << '\n' << "wrote " << out_path << '\n';
    return 0;
}

int cmd_options(const std::string& corpus_path, const std::string& task_name, std::uint64_t seed,
                const std::string& out_path, int min_states, int max_states, const SearchKnobs& knobs) {
    auto task = tasks::task_from_string(task_name);
    if (!task) throw CLI::ValidationError("--task", "unknown task: " + task_name);
    std::vector<std::string> skipped;
    auto entries = options::load_corpus(corpus_path, &skipped);
    for (const auto& s : skipped) std::cerr << "skipped: " << s << '\n';
    std::vector<dsl::Program> programs;
    programs.reserve(entries.size());
    for (auto& e : entries) programs.push_back(e.program);

    search::SearchConfig cfg = knobs.to_config();
    auto pool = options::extract_option_pool(programs);
    options::PipelineStats stats;
    long collect_ticks = 0;
    auto states = options::collect_states(pool, *task, seed, cfg.limits, min_states, max_states,
                                          &collect_ticks, cfg.task_options);
    auto lib = options::filter_options(pool, states, cfg.limits, &stats);
    stats.ticks += collect_ticks;
    options::save_options_file(out_path, lib);
    std::cout << "corpus programs: " << programs.size() << '\n'
              << "|O| (distinct sub-programs): " << stats.pool_size << '\n'
              << "excluded non-rollable: " << stats.excluded_non_rollable << '\n'
              << "|S| (probe states): " << stats.state_count << '\n'
              << "|Omega| (behaviorally distinct): " << stats.option_count << '\n'
              << "pipeline interpreter ticks: " << stats.ticks << '\n'
              << "wrote " << out_path << '\n';
    return 0;
}

struct Job {
    tasks::TaskId task;
    search::Method method;
    std::uint64_t seed;
};

int cmd_run(const std::string& tasks_arg, const std::string& methods_arg, const std::string& seeds_arg,
            int num_seeds, std::uint64_t seed_base, const SearchKnobs& knobs, const std::string& corpus_file,
            const std::string& corpus_dir, const std::string& options_file, std::uint64_t options_seed,
            bool full_pipeline, const std::string& out_dir, int jobs, const std::string& trace_path,
            bool print_best) {
    auto task_list = parse_tasks(tasks_arg);
    auto method_list = parse_methods(methods_arg);
    auto seed_list = parse_seeds(seeds_arg, num_seeds, seed_base);

    fs::create_directories(out_dir);

    // corpora are per task; a single --corpus file overrides the directory
    auto corpus_for = [&](tasks::TaskId id) -> std::vector<dsl::Program> {
        std::string path = corpus_file;
        if (path.empty() && !corpus_dir.empty()) {
            std::string candidate = corpus_dir + "/" + std::string(tasks::to_string(id)) + ".jsonl";
            if (fs::exists(candidate)) path = candidate;
        }
        if (path.empty()) return {};
        auto entries = options::load_corpus(path);
        std::vector<dsl::Program> out;
        out.reserve(entries.size());
        for (auto& e : entries) out.push_back(e.program);
        return out;
    };

    bool needs_corpus = false, needs_options = false;
    for (search::Method m : method_list) {
        if (m == search::Method::FM) needs_corpus = true;
        if (m == search::Method::IC) needs_options = true;
    }

    // resolve per-task inputs up front so missing files fail before any run
    std::map<tasks::TaskId, std::vector<dsl::Program>> corpora;
    std::map<tasks::TaskId, options::OptionLibrary> libraries;
    for (tasks::TaskId id : task_list) {
        std::vector<dsl::Program> corpus = corpus_for(id);
        if (needs_corpus && corpus.empty())
            throw std::runtime_error(std::string("no corpus available for task ") + tasks::to_string(id));
        if (needs_options) {
            if (!options_file.empty()) {
                if (task_list.size() > 1)
                    throw std::runtime_error("--options-file applies to single-task runs; use --full-pipeline");
                libraries[id] = options::load_options_file(options_file);
            } else if (full_pipeline) {
                if (corpus.empty())
                    throw std::runtime_error(std::string("no corpus available for task ") +
                                             tasks::to_string(id));
                search::SearchConfig cfg = knobs.to_config();
                options::PipelineStats stats;
                libraries[id] = options::build_library(corpus, id, options_seed, cfg.limits, &stats,
                                                       cfg.task_options);
                std::cout << "task " << tasks::to_string(id) << ": |O|=" << stats.pool_size
                          << " |S|=" << stats.state_count << " |Omega|=" << stats.option_count << '\n';
            } else {
                throw std::runtime_error("IC needs --options-file, or --full-pipeline with a corpus");
            }
        }
        corpora[id] = std::move(corpus);
    }

    std::vector<Job> job_list;
    for (tasks::TaskId t : task_list)
        for (search::Method m : method_list)
            for (std::uint64_t s : seed_list) job_list.push_back({t, m, s});

    std::vector<search::RunRecord> records(job_list.size());
    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < job_list.size(); i = next.fetch_add(1)) {
            const Job& job = job_list[i];
            search::SearchConfig cfg = knobs.to_config();
            cfg.task = job.task;
            cfg.method = job.method;
            cfg.master_seed = job.seed;
            const auto& corpus = corpora[job.task];
            const options::OptionLibrary* omega =
                libraries.count(job.task) ? &libraries.at(job.task) : nullptr;
            search::SearchRun run =
                search::run_method(cfg, corpus.empty() ? nullptr : &corpus,
                                   job.method == search::Method::IC ? omega : nullptr);
            records[i] = {job.seed, job.method, job.task, std::move(run)};
            std::lock_guard<std::mutex> lock(io_mutex);
            std::cout << tasks::to_string(job.task) << ' ' << search::to_string(job.method) << " seed "
                      << job.seed << ": final " << records[i].run.best_value << " ("
                      << records[i].run.episodes_consumed << " episodes, " << records[i].run.restarts
                      << " restarts)" << std::endl;
            if (print_best)
                std::cout << "  best: " << dsl::print(records[i].run.best_program) << std::endl;
        }
    };
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(job_list.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::string csv_path = out_dir + "/curves.csv";
    search::write_curves_csv(csv_path, records);
    auto rows = search::read_curves_csv(csv_path);
    auto summary = search::summarize(rows);
    std::ofstream(out_dir + "/summary.json") << search::summary_to_json(summary).dump(2) << '\n';
    std::cout << "wrote " << csv_path << " and " << out_dir << "/summary.json\n";

    if (!trace_path.empty()) {
        if (records.size() != 1)
            throw std::runtime_error("--emit-trace needs exactly one (task, method, seed) job");
        const auto& rec = records[0];
        search::SearchConfig cfg = knobs.to_config();
        auto eval = tasks::eval_set(rec.task, rec.seed, 1, cfg.task_options);
        tasks::TaskInstance live = eval[0];
        auto res = interp::run_episode(rec.run.best_program, live, cfg.limits, /*capture_trace=*/true);
        std::ofstream trace(trace_path);
        for (world::Action a : res.trace) {
            nlohmann::ordered_json j;
            j["action"] = world::to_string(a);
            trace << j.dump() << '\n';
        }
        std::cout << "wrote " << trace_path << " (" << res.trace.size() << " actions, return "
                  << res.episodic_return << ")\n";
    }
    return 0;
}

int cmd_report(const std::string& csv_path, const std::string& out_path) {
    auto rows = search::read_curves_csv(csv_path);
    auto summary = search::summarize(rows);
    std::cout << "task,method,seeds,mean_final_return,ci95_half_width\n";
    for (const auto& [task, methods] : summary)
        for (const auto& [method, cell] : methods)
            std::cout << task << ',' << method << ',' << cell.seeds << ',' << cell.mean << ',' << cell.ci95
                      << '\n';
    if (!out_path.empty()) {
        std::ofstream(out_path) << search::summary_to_json(summary).dump(2) << '\n';
        std::cout << "wrote " << out_path << '\n';
    }
    return 0;
}

int cmd_chart(const std::string& csv_path, const std::string& task, const std::string& out_path) {
    auto rows = search::read_curves_csv(csv_path);
    std::ofstream(out_path) << search::chart_svg(rows, task);
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Programmatic policy search for Karel the Robot"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override it");

    // harvest
    auto* harvest = app.add_subcommand("harvest", "obtain candidate programs (endpoint or corpus copy)");
    std::string h_out, h_from, h_task, h_endpoint, h_model = "gpt-4o", h_prompts = "fixtures/prompts",
                                                   h_info = "more";
    int h_n = 100, h_inflight = 4;
    double h_temp = 1.0;
    harvest->add_option("--out", h_out, "corpus output (JSON lines)")->required();
    harvest->add_option("--from-corpus", h_from, "copy+validate an existing corpus instead of querying");
    harvest->add_option("--task", h_task, "task name (selects the prompt description)");
    harvest->add_option("--endpoint", h_endpoint, "chat-completions base URL");
    harvest->add_option("--model", h_model, "model name");
    harvest->add_option("--n", h_n, "number of programs to request");
    harvest->add_option("--prompts-dir", h_prompts, "directory with template.txt and per-task descriptions");
    harvest->add_option("--prompt-info", h_info, "more | less information in the task description")
        ->check(CLI::IsMember({"more", "less"}));
    harvest->add_option("--temperature", h_temp, "sampling temperature");
    harvest->add_option("--in-flight", h_inflight, "max concurrent requests");

    // options
    auto* opts = app.add_subcommand("options", "extract, probe, and filter options from a corpus");
    std::string o_corpus, o_task, o_out;
    std::uint64_t o_seed = 0;
    int o_min = 300, o_max = 700;
    SearchKnobs o_knobs;
    opts->add_option("--corpus", o_corpus, "corpus JSONL")->required();
    opts->add_option("--task", o_task, "task whose initial states feed the probe set")->required();
    opts->add_option("--seed", o_seed, "probe-state seed");
    opts->add_option("--out", o_out, "options output (JSON lines)")->required();
    opts->add_option("--min-states", o_min, "probe-state lower bound");
    opts->add_option("--max-states", o_max, "probe-state upper bound");
    o_knobs.attach(opts);

    // run
    auto* run = app.add_subcommand("run", "run searches and write learning curves");
    std::string r_tasks = "all", r_methods = "SHC", r_seeds, r_corpus, r_corpus_dir = "fixtures/corpus",
                                 r_options, r_out = "out", r_trace;
    int r_num_seeds = 30, r_jobs = 1;
    std::uint64_t r_seed_base = 0, r_options_seed = 0;
    bool r_full = false;
    SearchKnobs r_knobs;
    run->add_option("--tasks", r_tasks, "comma-separated task list or 'all'");
    run->add_option("--methods", r_methods, "comma-separated: IC,SHC,LISS-o,LISS-r,FM");
    run->add_option("--seeds", r_seeds, "explicit comma-separated master seeds");
    run->add_option("--num-seeds", r_num_seeds, "number of consecutive seeds when --seeds is absent");
    run->add_option("--seed-base", r_seed_base, "first seed when --seeds is absent");
    run->add_option("--corpus", r_corpus, "single corpus file (single-task runs)");
    run->add_option("--corpus-dir", r_corpus_dir, "directory of per-task corpora <Task>.jsonl");
    run->add_option("--options-file", r_options, "precomputed options file (IC, single-task runs)");
    run->add_option("--options-seed", r_options_seed, "probe-state seed for --full-pipeline");
    run->add_flag("--full-pipeline", r_full, "build options from the corpus in-process (IC)");
    run->add_option("--out", r_out, "output directory");
    run->add_option("--jobs", r_jobs, "parallel worker count");
    run->add_option("--emit-trace", r_trace, "write the best program's trace (single-job runs)");
    bool r_print_best = false;
    run->add_flag("--print-best", r_print_best, "print each run's best program");
    r_knobs.attach(run);

    // report
    auto* report = app.add_subcommand("report", "summarize a curves CSV");
    std::string p_csv, p_out;
    report->add_option("--csv", p_csv, "curves CSV")->required();
    report->add_option("--out", p_out, "summary JSON output");

    // chart
    auto* chart = app.add_subcommand("chart", "render a static SVG learning-curve chart");
    std::string c_csv, c_task, c_out = "chart.svg";
    chart->add_option("--csv", c_csv, "curves CSV")->required();
    chart->add_option("--task", c_task, "task to plot")->required();
    chart->add_option("--out", c_out, "SVG output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*harvest)
            return cmd_harvest(h_out, h_from, h_task, h_endpoint, h_model, h_prompts, h_info, h_n, h_temp,
                               h_inflight);
        if (*opts) return cmd_options(o_corpus, o_task, o_seed, o_out, o_min, o_max, o_knobs);
        if (*run)
            return cmd_run(r_tasks, r_methods, r_seeds, r_num_seeds, r_seed_base, r_knobs, r_corpus,
                           r_corpus_dir, r_options, r_options_seed, r_full, r_out, r_jobs, r_trace,
                           r_print_best);
        if (*report) return cmd_report(p_csv, p_out);
        if (*chart) return cmd_chart(c_csv, c_task, c_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
