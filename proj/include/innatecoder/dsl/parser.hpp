#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "innatecoder/dsl/ast.hpp"

namespace innatecoder::dsl {

struct ParseOptions {
    // Upper bound accepted for REPEAT counts. The sampler has its own, much
    // smaller cap; the parser is permissive so externally-written programs
    // with large counts load.
    int number_cap = 9999;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t byte_offset, std::vector<std::string> expected);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Parses the concrete token syntax (whitespace-insensitive, UTF-8).
Program parse(std::string_view text, const ParseOptions& opts = {});

// Parses a detached fragment rooted at the given non-terminal; used to load
// option files. `NonTerminal::Program` behaves exactly like parse().
Node parse_node(NonTerminal kind, std::string_view text, const ParseOptions& opts = {});

} // namespace innatecoder::dsl
