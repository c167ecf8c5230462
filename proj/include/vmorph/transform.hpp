#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/errors.hpp"

namespace vmorph {

class SynonymLexicon;

enum class TransformRule { IfFlip, LoopConvert, CondConvert, FunctionChain, ArgumentPass, CodeOrder };

inline constexpr TransformRule kAllRules[] = {TransformRule::IfFlip,        TransformRule::LoopConvert,
                                              TransformRule::CondConvert,   TransformRule::FunctionChain,
                                              TransformRule::ArgumentPass,  TransformRule::CodeOrder};

const char* to_string(TransformRule r);
TransformRule transform_rule_from_string(std::string_view s);

struct NotApplicable {
    std::string reason;
};

// Outcome of a single-site rewrite.
template <class T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(NotApplicable na) : v_(std::move(na)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }
    const T& value() const { return std::get<T>(v_); }
    T& value() { return std::get<T>(v_); }
    const std::string& reason() const { return std::get<NotApplicable>(v_).reason; }

private:
    std::variant<T, NotApplicable> v_;
};

struct AppliedSite {
    TransformRule rule;
    Span span;
    std::string note;
};

struct SkippedSite {
    TransformRule rule;
    Span span;
    std::string reason;
};

struct TransformReport {
    std::vector<AppliedSite> applied;
    std::vector<SkippedSite> skipped;

    bool empty() const { return applied.empty() && skipped.empty(); }
    std::size_t applied_count(TransformRule r) const;
    std::size_t skipped_count(TransformRule r) const;
    void append(const TransformReport& other);
    // {"applied": [{"rule", "span", "note"}...], "skipped": [{"rule", "span", "reason"}...]}
    std::string to_json() const;
};

// Methods considered free of side effects for reordering, one qualified name
// per line (`String.length`). A call matches when its receiver is the class
// itself (`Math.max`) or a value whose static type is that class.
class PurityWhitelist {
public:
    static PurityWhitelist parse(std::string_view text);
    static PurityWhitelist load(const std::string& path);
    static PurityWhitelist bundled();

    bool contains(std::string_view type, std::string_view method) const;
    std::size_t size() const { return qualified_.size(); }

private:
    std::set<std::string, std::less<>> qualified_;
};

// Everything the rules need beyond the statement at hand.
struct TransformContext {
    const SynonymLexicon* lexicon = nullptr;  // participles for fresh names
    PurityWhitelist purity;
    std::set<std::string> taken_names;           // fresh names avoid these
    std::map<std::string, std::string> method_returns;  // same-file methods with one return type
    std::set<std::string> project_methods;       // names declared in the file
    std::set<std::string> locals;                // params and locals of the method
    std::map<std::string, std::string> local_types;  // declared (non-var) type when unambiguous
};

// Builds a context for transforming `method`, which belongs to `file` when
// given. Collects the names to avoid and the static types used for fresh
// declarations.
TransformContext make_context(const ast::MethodDecl& method, const ast::SourceFile* file = nullptr,
                              const SynonymLexicon* lexicon = nullptr,
                              PurityWhitelist purity = PurityWhitelist::bundled());

// --- single-site rules -----------------------------------------------------

// Negates the condition (dropping a leading `!` instead of doubling it) and
// swaps the branches. NotApplicable("no-else") without an else branch.
Result<ast::Stmt> flip_if(const ast::Stmt& s);

enum class LoopDirection { Auto, ToWhile, ToFor };

// Auto: for -> while, while -> for. ToFor also folds the `{ init; while }`
// form produced by ToWhile back into a for loop.
Result<ast::Stmt> convert_loop(const ast::Stmt& s, LoopDirection direction = LoopDirection::Auto);

// Ternary assignment or initializer -> if/else; switch -> if/else-if chain;
// if/else-if chain over one scrutinee -> switch. The result may be two
// statements when an initializer is split into declaration plus if. With a
// context, an if-chain whose scrutinee has a known type other than int or
// String is refused.
Result<std::vector<ast::Stmt>> convert_conditional(const ast::Stmt& s, const TransformContext* ctx = nullptr);

// Inverse of the ternary case: `if (c) { v = a; } else { v = b; }` ->
// `v = c ? a : b;`, also folding a directly preceding `T v;`. Applies to the
// first such site in `block`.
Result<ast::Block> conditional_to_ternary(const ast::Block& block);

// --- block rules (first applicable site in the block's own statements) -----

enum class ChainDirection { Split, Merge };
enum class ArgumentDirection { Extract, Inline };

Result<ast::Block> chain_functions(const ast::Block& block, ChainDirection direction, TransformContext& ctx);
Result<ast::Block> argument_pass(const ast::Block& block, ArgumentDirection direction, TransformContext& ctx);

// Swaps independent adjacent statement pairs, scanning left to right.
// Never fails: without a swappable pair the block is returned unchanged.
ast::Block reorder_statements(const ast::Block& block, TransformContext& ctx, TransformReport* report = nullptr);

// --- drivers ---------------------------------------------------------------

// Applies `rules` (in the fixed order of kAllRules, whatever order they are
// given in) to every applicable site of `method`, one pass, outermost first.
std::pair<ast::MethodDecl, TransformReport> apply_rules(const ast::MethodDecl& method,
                                                        const std::vector<TransformRule>& rules,
                                                        TransformContext& ctx);

std::pair<ast::MethodDecl, TransformReport> apply_all(const ast::MethodDecl& method, TransformContext& ctx);

}  // namespace vmorph
