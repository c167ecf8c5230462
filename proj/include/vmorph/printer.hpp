#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmorph/ast.hpp"

namespace vmorph {

// For each printed line (index 0 is line 1), the span of the source construct
// that line renders, if any. Closing braces, `else` lines and comments have no
// origin.
using LineOrigins = std::vector<std::optional<Span>>;

// Canonical rendering: 4-space indentation, K&R braces, one statement per
// line, minimal parentheses. Comments are emitted on their own lines before
// the construct they are attached to.
std::string print(const ast::SourceFile& file);

// Renders a method with every line prefixed by `indent` (nested levels add
// four spaces each). The result has no trailing newline.
std::string print_method(const ast::MethodDecl& method, const std::string& indent = "",
                         LineOrigins* origins = nullptr);

std::string print_stmt(const ast::Stmt& stmt, const std::string& indent = "");
std::string print_expr(const ast::Expr& expr);

}  // namespace vmorph
