#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vmorph/ast.hpp"

namespace vmorph {

// Parses a compilation unit of the supported subset (grammar in
// docs/grammar.md). Throws SyntaxError on malformed input and
// UnsupportedConstruct on Java outside the subset.
ast::SourceFile parse(std::string_view text, const std::string& file);

// Fragment entry points, mostly for tests and tools.
ast::Expr parse_expression(std::string_view text, const std::string& file = "<expr>");
std::vector<ast::Stmt> parse_statements(std::string_view text, const std::string& file = "<stmts>");

}  // namespace vmorph
