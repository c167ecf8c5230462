#include <climits>
#include <cstdio>
#include <random>
#include <set>

#include "json.hpp"

#include "vmorph/oracle.hpp"
#include "vmorph/walk.hpp"

namespace vmorph {

using namespace ast;

std::string to_string(const Value& value) {
    if (value.is_null()) return "null";
    if (const auto* i = std::get_if<std::int32_t>(&value.v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&value.v)) return *b ? "true" : "false";
    std::string out = "\"";
    for (unsigned char c : std::get<std::string>(value.v)) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out + "\"";
}

std::string to_string(const Outcome& outcome) {
    switch (outcome.kind) {
        case Outcome::Kind::Returned: return outcome.value ? "returned " + to_string(*outcome.value) : "returned";
        case Outcome::Kind::Threw: return "threw " + outcome.exception;
        case Outcome::Kind::OutOfFuel: return "out of fuel";
    }
    return {};
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Diverged: return "diverged";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "";
}

Verdict verdict_from_string(std::string_view s) {
    for (Verdict v : {Verdict::Equivalent, Verdict::Diverged, Verdict::Inconclusive}) {
        if (s == to_string(v)) return v;
    }
    throw Error("unknown verdict '" + std::string(s) + "'");
}

namespace {

nlohmann::json value_json(const Value& v) {
    if (v.is_null()) return nullptr;
    if (const auto* i = std::get_if<std::int32_t>(&v.v)) return *i;
    if (const auto* b = std::get_if<bool>(&v.v)) return *b;
    return std::get<std::string>(v.v);
}

nlohmann::json outcome_json(const Outcome& o) {
    nlohmann::json j;
    switch (o.kind) {
        case Outcome::Kind::Returned:
            j["kind"] = "returned";
            if (o.value) j["value"] = value_json(*o.value);
            break;
        case Outcome::Kind::Threw:
            j["kind"] = "threw";
            j["exception"] = o.exception;
            break;
        case Outcome::Kind::OutOfFuel: j["kind"] = "out_of_fuel"; break;
    }
    return j;
}

Value value_from_json(const nlohmann::json& j) {
    if (j.is_null()) return Value::null();
    if (j.is_boolean()) return Value::boolean(j.get<bool>());
    if (j.is_number_integer()) return Value::integer(j.get<std::int32_t>());
    return Value::string(j.get<std::string>());
}

Outcome outcome_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "returned") {
        return Outcome::returned(j.contains("value") ? std::optional<Value>(value_from_json(j["value"])) : std::nullopt);
    }
    if (kind == "threw") return Outcome::threw(j.at("exception").get<std::string>());
    return Outcome::out_of_fuel();
}

// Literals of the method body, used to hit equality tests and switch labels.
struct LiteralPool {
    std::vector<std::int32_t> ints;
    std::vector<std::string> strings;
};

std::string unescape_simple(const std::string& raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size()) {
            const char c = raw[++i];
            out += c == 'n' ? '\n' : (c == 't' ? '\t' : c);
        } else {
            out += raw[i];
        }
    }
    return out;
}

LiteralPool harvest(const MethodDecl& m) {
    std::set<std::int32_t> ints;
    std::set<std::string> strings;
    auto add = [&](const LiteralExpr& l) {
        if (l.kind == LiteralKind::Int) {
            const auto v = static_cast<std::int64_t>(static_cast<std::int32_t>(static_cast<std::uint32_t>(l.int_value)));
            for (std::int64_t d : {-1, 0, 1}) {
                if (v + d >= INT_MIN && v + d <= INT_MAX) ints.insert(static_cast<std::int32_t>(v + d));
            }
        } else if (l.kind == LiteralKind::String) {
            strings.insert(unescape_simple(l.text));
        }
    };
    walk_exprs_in_block(m.body, [&](const Expr& e) {
        if (const auto* l = e.get_if<LiteralExpr>()) add(*l);
    });
    walk_block(m.body, [&](const Stmt& s) {
        if (const auto* sw = s.get_if<SwitchStmt>()) {
            for (const auto& c : sw->cases) {
                for (const auto& l : c.labels) {
                    if (!l.is_default) add(l.value);
                }
            }
        }
    });
    return {{ints.begin(), ints.end()}, {strings.begin(), strings.end()}};
}

constexpr std::int32_t kBoundary[] = {0, 1, -1, 2, -2, 10, 100, INT_MIN, INT_MAX};
constexpr char kAlphabet[] = "aAb -1x";

Value draw(const std::string& type, const LiteralPool& pool, std::mt19937_64& rng) {
    if (type == "boolean") return Value::boolean(rng() % 2 == 0);
    if (type == "int") {
        const auto r = rng() % 10;
        if (r < 3) return Value::integer(kBoundary[rng() % std::size(kBoundary)]);
        if (r < 5 && !pool.ints.empty()) return Value::integer(pool.ints[rng() % pool.ints.size()]);
        return Value::integer(static_cast<std::int32_t>(rng() % 101) - 50);
    }
    const auto r = rng() % 10;
    if (r == 0) return Value::null();
    if (r < 4 && !pool.strings.empty()) return Value::string(pool.strings[rng() % pool.strings.size()]);
    std::string s;
    const auto len = rng() % 7;
    for (std::uint64_t i = 0; i < len; ++i) s += kAlphabet[rng() % (sizeof kAlphabet - 1)];
    return Value::string(s);
}

std::vector<Value> arguments(const MethodDecl& m, const LiteralPool& pool, std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::vector<Value> out;
    for (const auto& p : m.params) out.push_back(draw(p.type.name, pool, rng));
    return out;
}

}  // namespace

std::string EquivalenceVerdict::to_json() const {
    nlohmann::json j;
    j["verdict"] = to_string(verdict);
    j["trials"] = trials;
    j["inconclusive_trials"] = inconclusive_trials;
    if (counterexample) {
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : counterexample->args) args.push_back(value_json(a));
        j["counterexample"] = {{"args", args},
                               {"first", outcome_json(counterexample->first)},
                               {"second", outcome_json(counterexample->second)}};
    }
    return j.dump();
}

EquivalenceVerdict EquivalenceVerdict::from_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    EquivalenceVerdict out;
    out.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    out.trials = j.at("trials").get<int>();
    out.inconclusive_trials = j.at("inconclusive_trials").get<int>();
    if (j.contains("counterexample")) {
        const auto& c = j["counterexample"];
        Counterexample cx{{}, outcome_from_json(c.at("first")), outcome_from_json(c.at("second"))};
        for (const auto& a : c.at("args")) cx.args.push_back(value_from_json(a));
        out.counterexample = std::move(cx);
    }
    return out;
}

std::vector<Value> trial_arguments(const MethodDecl& method, std::uint64_t seed, int index) {
    return arguments(method, harvest(method), seed, index);
}

EquivalenceVerdict check_equivalence(MethodUnderTest first, MethodUnderTest second, int trials, std::uint64_t seed,
                                     std::int64_t fuel) {
    const MethodDecl& a = *first.method;
    const MethodDecl& b = *second.method;
    if (a.params.size() != b.params.size()) throw Error("check_equivalence: parameter counts differ");
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].type.name != b.params[i].type.name) throw Error("check_equivalence: parameter types differ");
    }
    check_supported(a, first.file);
    check_supported(b, second.file);
    const LiteralPool pool = harvest(a);
    EquivalenceVerdict out;
    for (int t = 0; t < trials; ++t) {
        auto args = arguments(a, pool, seed, t);
        Outcome x = evaluate(a, args, fuel, first.file);
        Outcome y = evaluate(b, args, fuel, second.file);
        ++out.trials;
        if (x.kind == Outcome::Kind::OutOfFuel || y.kind == Outcome::Kind::OutOfFuel) {
            ++out.inconclusive_trials;
            continue;
        }
        if (!(x == y)) {
            out.verdict = Verdict::Diverged;
            out.counterexample = Counterexample{std::move(args), std::move(x), std::move(y)};
            return out;
        }
    }
    out.verdict = out.inconclusive_trials > 0 ? Verdict::Inconclusive : Verdict::Equivalent;
    return out;
}

EquivalenceVerdict check_equivalence(const MethodDecl& first, const MethodDecl& second, int trials,
                                     std::uint64_t seed, std::int64_t fuel) {
    return check_equivalence(MethodUnderTest{&first, nullptr}, MethodUnderTest{&second, nullptr}, trials, seed, fuel);
}

}  // namespace vmorph
