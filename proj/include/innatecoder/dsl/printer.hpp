#pragma once

#include <string>

#include "innatecoder/dsl/ast.hpp"

namespace innatecoder::dsl {

// Concrete-syntax rendering: tokens joined by single spaces, sequencing as
// juxtaposition. print(parse(t)) is token-identical to a normalized t.
std::string print(const Program& p);

// Renders a detached subtree (an option body, say) without the program
// wrapper unless the node itself is Program-kind.
std::string print_node(const Node& n);

} // namespace innatecoder::dsl
