#pragma once

#include "vmorph/ast.hpp"

namespace vmorph {

// Tree equality ignoring spans and layout. Comments and literal spellings
// take part in the comparison; there is no algebraic normalisation.
bool structurally_equal(const ast::Expr& a, const ast::Expr& b);
bool structurally_equal(const ast::Stmt& a, const ast::Stmt& b);
bool structurally_equal(const ast::Block& a, const ast::Block& b);
bool structurally_equal(const ast::MethodDecl& a, const ast::MethodDecl& b);
bool structurally_equal(const ast::ClassDecl& a, const ast::ClassDecl& b);
bool structurally_equal(const ast::SourceFile& a, const ast::SourceFile& b);

}  // namespace vmorph
