#pragma once

#include <optional>
#include <string>
#include <vector>

#include "innatecoder/dsl/ast.hpp"
#include "innatecoder/tasks/tasks.hpp"

namespace innatecoder::options {

struct EndpointConfig {
    std::string base_url;        // e.g. https://api.openai.com or http://127.0.0.1:8089
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key;         // usually from INNATECODER_API_KEY
    double temperature = 1.0;
    int max_in_flight = 4;       // bounded concurrent requests
    int timeout_seconds = 60;
};

struct HarvestReport {
    int requested = 0;
    int returned = 0;  // HTTP round trips that produced a response body
    int parsed = 0;
    int discarded = 0; // no tag, bad syntax, or transport failure
    std::vector<std::string> notes; // one line per failed request, request order

    std::string summary() const;
};

struct CorpusEntry {
    dsl::Program program;
    std::string text;
    std::string task;
    std::string origin; // llm | sampler | manual
    std::string model;
    std::uint64_t seed = 0;
};

// Extracts the text between the first <program></program> pair, if any.
std::optional<std::string> extract_program_tag(const std::string& response_text);

// Issues n independent chat-completion requests and parses each tagged
// program. Per-request failures are recorded in the report and the run
// continues; zero parsed programs throws.
std::vector<CorpusEntry> harvest_llm(const EndpointConfig& endpoint, const std::string& system_prompt,
                                     const std::string& user_prompt, int n, HarvestReport& report);

// JSON-lines corpus file. Loading skips (and logs to the report notes)
// unparseable lines; zero valid programs throws.
void save_corpus(const std::string& path, const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> load_corpus(const std::string& path, std::vector<std::string>* skipped = nullptr);

// Prompt assembly: substitutes {{TASK_DESCRIPTION}} in the template.
std::string render_prompt(const std::string& prompt_template, const std::string& task_description);

} // namespace innatecoder::options
