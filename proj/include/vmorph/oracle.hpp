#pragma once

// Deterministic interpreter for the oracle subset and a randomized
// differential checker built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vmorph/ast.hpp"
#include "vmorph/errors.hpp"

namespace vmorph {

// The method (or something it calls) uses a construct the interpreter does
// not model: fields, `this`, objects other than strings, unknown calls.
class UnsupportedForEvaluation : public LocatedError {
public:
    UnsupportedForEvaluation(Span span, const std::string& what)
        : LocatedError("unsupported for evaluation", std::move(span), what) {}
};

struct Null {
    bool operator==(const Null&) const = default;
};

// int is 32-bit two's complement; strings compare by content.
struct Value {
    std::variant<Null, std::int32_t, bool, std::string> v;

    static Value null() { return {Null{}}; }
    static Value integer(std::int32_t i) { return {i}; }
    static Value boolean(bool b) { return {b}; }
    static Value string(std::string s) { return {std::move(s)}; }

    bool is_null() const { return std::holds_alternative<Null>(v); }
    bool operator==(const Value&) const = default;
};

// Java-style rendering: 42, true, null, "text" (quoted, escaped).
std::string to_string(const Value& value);

struct Outcome {
    enum class Kind { Returned, Threw, OutOfFuel };

    Kind kind = Kind::Returned;
    std::optional<Value> value;  // Returned: nullopt for void
    std::string exception;       // Threw: simple class name, e.g. ArithmeticException

    static Outcome returned(std::optional<Value> v) { return {Kind::Returned, std::move(v), {}}; }
    static Outcome threw(std::string kind) { return {Kind::Threw, std::nullopt, std::move(kind)}; }
    static Outcome out_of_fuel() { return {Kind::OutOfFuel, std::nullopt, {}}; }

    bool operator==(const Outcome&) const = default;
};

std::string to_string(const Outcome& outcome);

inline constexpr std::int64_t kDefaultFuel = 10000;

// Runs `method` on `args`. Same-file methods are resolved in `file` when
// given. Fuel is spent per statement executed and per loop iteration, across
// nested calls. Throws UnsupportedForEvaluation when the method leaves the
// oracle subset (checked up front, so untaken branches count too).
Outcome evaluate(const ast::MethodDecl& method, const std::vector<Value>& args, std::int64_t fuel = kDefaultFuel,
                 const ast::SourceFile* file = nullptr);

// Throws UnsupportedForEvaluation for the first construct of `method` (or a
// same-file callee) outside the oracle subset.
void check_supported(const ast::MethodDecl& method, const ast::SourceFile* file = nullptr);
bool is_supported(const ast::MethodDecl& method, const ast::SourceFile* file = nullptr);

enum class Verdict { Equivalent, Diverged, Inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct Counterexample {
    std::vector<Value> args;
    Outcome first;
    Outcome second;
};

struct EquivalenceVerdict {
    Verdict verdict = Verdict::Equivalent;
    int trials = 0;
    int inconclusive_trials = 0;
    std::optional<Counterexample> counterexample;

    // {"verdict", "trials", "inconclusive_trials", "counterexample"?}
    std::string to_json() const;
    static EquivalenceVerdict from_json(std::string_view text);
};

struct MethodUnderTest {
    const ast::MethodDecl* method = nullptr;
    const ast::SourceFile* file = nullptr;
};

// Runs both methods on `trials` argument vectors drawn from a stream seeded
// by (seed, trial index). Arguments mix small and boundary ints, short strings
// over a fixed alphabet, literals found in the first method, and null for
// strings. Parameter lists must agree in arity and types.
EquivalenceVerdict check_equivalence(MethodUnderTest first, MethodUnderTest second, int trials = 100,
                                     std::uint64_t seed = 0, std::int64_t fuel = kDefaultFuel);

// Convenience for two methods without same-file callees.
EquivalenceVerdict check_equivalence(const ast::MethodDecl& first, const ast::MethodDecl& second, int trials = 100,
                                     std::uint64_t seed = 0, std::int64_t fuel = kDefaultFuel);

// The argument vector of trial `index`, as check_equivalence draws it.
std::vector<Value> trial_arguments(const ast::MethodDecl& method, std::uint64_t seed, int index);

}  // namespace vmorph
