#include "innatecoder/options/harvest.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "innatecoder/dsl/parser.hpp"
#include "innatecoder/dsl/printer.hpp"

namespace innatecoder::options {

std::string HarvestReport::summary() const {
    std::ostringstream os;
    os << "harvest: requested=" << requested << " returned=" << returned << " parsed=" << parsed
       << " discarded=" << discarded;
    return os.str();
}

std::optional<std::string> extract_program_tag(const std::string& response_text) {
    const std::string open = "<program>", close = "</program>";
    auto b = response_text.find(open);
    if (b == std::string::npos) return std::nullopt;
    b += open.size();
    auto e = response_text.find(close, b);
    if (e == std::string::npos) return std::nullopt;
    return response_text.substr(b, e - b);
}

namespace {

struct RequestOutcome {
    bool transport_ok = false;
    std::string note;           // failure description when not parsed
    std::optional<dsl::Program> program;
    std::string program_text;
};

RequestOutcome issue_request(const EndpointConfig& ep, const std::string& system_prompt,
                             const std::string& user_prompt) {
    RequestOutcome out;
    nlohmann::json body;
    body["model"] = ep.model;
    body["messages"] = nlohmann::json::array();
    if (!system_prompt.empty()) body["messages"].push_back({{"role", "system"}, {"content", system_prompt}});
    body["messages"].push_back({{"role", "user"}, {"content", user_prompt}});
    body["temperature"] = ep.temperature;

    httplib::Headers headers;
    if (!ep.api_key.empty()) headers.emplace("Authorization", "Bearer " + ep.api_key);

    httplib::Client client(ep.base_url); // handles http and https URLs
    client.set_connection_timeout(ep.timeout_seconds);
    client.set_read_timeout(ep.timeout_seconds);
    httplib::Result res = client.Post(ep.path, headers, body.dump(), "application/json");

    if (!res) {
        out.note = "transport error: " + httplib::to_string(res.error());
        return out;
    }
    out.transport_ok = true;
    if (res->status != 200) {
        out.note = "http status " + std::to_string(res->status);
        return out;
    }
    std::string content;
    try {
        auto j = nlohmann::json::parse(res->body);
        content = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
        out.note = std::string("malformed response body: ") + e.what();
        return out;
    }
    auto tagged = extract_program_tag(content);
    if (!tagged) {
        out.note = "no <program></program> tag";
        return out;
    }
    try {
        out.program = dsl::parse(*tagged);
        out.program_text = dsl::print(*out.program);
    } catch (const dsl::ParseError& e) {
        out.note = std::string("unparseable program: ") + e.what();
    }
    return out;
}

} // namespace

std::vector<CorpusEntry> harvest_llm(const EndpointConfig& endpoint, const std::string& system_prompt,
                                     const std::string& user_prompt, int n, HarvestReport& report) {
    if (n < 1) throw std::invalid_argument("harvest count must be >= 1");
    report.requested = n;
    std::vector<RequestOutcome> outcomes(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    int workers = std::max(1, std::min(endpoint.max_in_flight, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                outcomes[static_cast<std::size_t>(i)] = issue_request(endpoint, system_prompt, user_prompt);
        });
    }
    for (auto& th : pool) th.join();

    std::vector<CorpusEntry> entries;
    for (int i = 0; i < n; ++i) {
        auto& o = outcomes[static_cast<std::size_t>(i)];
        if (o.transport_ok) ++report.returned;
        if (o.program) {
            ++report.parsed;
            CorpusEntry e;
            e.program = std::move(*o.program);
            e.text = std::move(o.program_text);
            e.origin = "llm";
            e.model = endpoint.model;
            e.seed = static_cast<std::uint64_t>(i);
            entries.push_back(std::move(e));
        } else {
            ++report.discarded;
            report.notes.push_back("request " + std::to_string(i) + ": " + o.note);
        }
    }
    if (entries.empty()) throw std::runtime_error("harvest produced zero parseable programs");
    return entries;
}

void save_corpus(const std::string& path, const std::vector<CorpusEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    for (const CorpusEntry& e : entries) {
        nlohmann::ordered_json j;
        j["program"] = e.text;
        if (!e.task.empty()) j["task"] = e.task;
        j["origin"] = e.origin.empty() ? "manual" : e.origin;
        if (!e.model.empty()) j["model"] = e.model;
        j["seed"] = e.seed;
        out << j.dump() << '\n';
    }
}

std::vector<CorpusEntry> load_corpus(const std::string& path, std::vector<std::string>* skipped) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::vector<CorpusEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto skip = [&](const std::string& why) {
            std::string msg = path + ":" + std::to_string(lineno) + ": " + why;
            if (skipped) skipped->push_back(msg);
        };
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("program")) {
            skip("not a JSON object with a \"program\" field");
            continue;
        }
        CorpusEntry e;
        e.text = j["program"].get<std::string>();
        try {
            e.program = dsl::parse(e.text);
        } catch (const dsl::ParseError& err) {
            skip(err.what());
            continue;
        }
        e.task = j.value("task", "");
        e.origin = j.value("origin", "");
        e.model = j.value("model", "");
        e.seed = j.value("seed", 0ULL);
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw std::runtime_error("no valid programs in corpus: " + path);
    return entries;
}

std::string render_prompt(const std::string& prompt_template, const std::string& task_description) {
    const std::string placeholder = "{{TASK_DESCRIPTION}}";
    std::string out = prompt_template;
    auto at = out.find(placeholder);
    if (at == std::string::npos)
        throw std::runtime_error("prompt template lacks the {{TASK_DESCRIPTION}} placeholder");
    while (at != std::string::npos) {
        out.replace(at, placeholder.size(), task_description);
        at = out.find(placeholder, at + task_description.size());
    }
    return out;
}

} // namespace innatecoder::options
