#include "procframe/declare.hpp"

#include <algorithm>
#include <array>

#include "procframe/error.hpp"

namespace procframe {

namespace {

struct KindInfo {
    TemplateKind kind;
    std::string_view name;
    std::size_t arity;
};

constexpr std::array<KindInfo, 19> kKinds{{
    {TemplateKind::Existence, "Existence", 1},
    {TemplateKind::Absence, "Absence", 1},
    {TemplateKind::Exactly, "Exactly", 1},
    {TemplateKind::Init, "Init", 1},
    {TemplateKind::Response, "Response", 2},
    {TemplateKind::Precedence, "Precedence", 2},
    {TemplateKind::Succession, "Succession", 2},
    {TemplateKind::AlternateResponse, "AlternateResponse", 2},
    {TemplateKind::AlternatePrecedence, "AlternatePrecedence", 2},
    {TemplateKind::AlternateSuccession, "AlternateSuccession", 2},
    {TemplateKind::CoExistence, "CoExistence", 2},
    {TemplateKind::NotCoExistence, "NotCoExistence", 2},
    {TemplateKind::NotSuccession, "NotSuccession", 2},
    {TemplateKind::NotChainSuccession, "NotChainSuccession", 2},
    {TemplateKind::Interposition, "Interposition", 3},
    {TemplateKind::BalancedEnablement, "BalancedEnablement", 3},
    {TemplateKind::ChainResponse, "ChainResponse", 2},
    {TemplateKind::ChainPrecedence, "ChainPrecedence", 2},
    {TemplateKind::ChainSuccession, "ChainSuccession", 2},
}};

const KindInfo& info(TemplateKind kind) {
    for (const auto& k : kKinds) {
        if (k.kind == kind) return k;
    }
    throw InvalidArgument("unknown template kind");
}

// Transition rows indexed by argument role (position in the argument list) plus a final
// column for every other activity.
using Rows = std::vector<std::vector<StateId>>;

Dfa build(const std::vector<Activity>& roles, const Rows& rows, const std::vector<bool>& accepting) {
    std::vector<Activity> symbols = roles;
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    const std::size_t cols = symbols.size() + 1;
    std::vector<StateId> table(rows.size() * cols);
    for (std::size_t s = 0; s < rows.size(); ++s) {
        for (std::size_t c = 0; c < symbols.size(); ++c) {
            const auto role = std::find(roles.begin(), roles.end(), symbols[c]) - roles.begin();
            table[s * cols + c] = rows[s][static_cast<std::size_t>(role)];
        }
        table[s * cols + symbols.size()] = rows[s].back();
    }
    return minimize(Dfa(std::move(symbols), rows.size(), 0, accepting, std::move(table)));
}

Dfa compile_counting(TemplateKind kind, unsigned n, const Activity& a) {
    // State i counts occurrences, saturating at `top`.
    const StateId top = kind == TemplateKind::Exactly ? n + 1 : n;
    Rows rows;
    std::vector<bool> accepting;
    for (StateId i = 0; i <= top; ++i) {
        rows.push_back({std::min<StateId>(i + 1, top), i});
        switch (kind) {
            case TemplateKind::Existence: accepting.push_back(i == n); break;
            case TemplateKind::Absence: accepting.push_back(i < n); break;
            default: accepting.push_back(i == n); break;
        }
    }
    return build({a}, rows, accepting);
}

}  // namespace

std::size_t arity(TemplateKind kind) { return info(kind).arity; }

bool is_counting(TemplateKind kind) {
    return kind == TemplateKind::Existence || kind == TemplateKind::Absence ||
           kind == TemplateKind::Exactly;
}

bool is_unary(TemplateKind kind) { return arity(kind) == 1; }

bool is_position_sensitive(TemplateKind kind) {
    switch (kind) {
        case TemplateKind::Init:
        case TemplateKind::NotChainSuccession:
        case TemplateKind::ChainResponse:
        case TemplateKind::ChainPrecedence:
        case TemplateKind::ChainSuccession: return true;
        default: return false;
    }
}

std::vector<TemplateKind> compilable_kinds() {
    std::vector<TemplateKind> out;
    for (const auto& k : kKinds) {
        if (k.kind == TemplateKind::ChainResponse || k.kind == TemplateKind::ChainPrecedence ||
            k.kind == TemplateKind::ChainSuccession) {
            continue;
        }
        out.push_back(k.kind);
    }
    return out;
}

std::string_view kind_name(TemplateKind kind) { return info(kind).name; }

std::optional<TemplateKind> kind_from_name(std::string_view name) {
    for (const auto& k : kKinds) {
        if (k.name == name) return k.kind;
    }
    return std::nullopt;
}

Constraint::Constraint(ConstraintTemplate tmpl, std::vector<Activity> args)
    : tmpl_(tmpl), args_(std::move(args)) {
    const std::size_t n = arity(tmpl_.kind);
    if (args_.size() != n) {
        throw InvalidArgument(std::string(kind_name(tmpl_.kind)) + " expects " + std::to_string(n) +
                              " argument(s), got " + std::to_string(args_.size()));
    }
    for (const auto& a : args_) require_valid_activity(a);
    if (is_counting(tmpl_.kind)) {
        if (tmpl_.count < 1) throw InvalidArgument("counting templates need a count of at least 1");
    } else if (tmpl_.count != 0) {
        throw InvalidArgument(std::string(kind_name(tmpl_.kind)) + " takes no count");
    }
    if (tmpl_.kind != TemplateKind::NotChainSuccession) {
        for (std::size_t i = 0; i < args_.size(); ++i) {
            for (std::size_t j = i + 1; j < args_.size(); ++j) {
                if (args_[i] == args_[j]) {
                    throw InvalidArgument(std::string(kind_name(tmpl_.kind)) +
                                          " arguments must be pairwise distinct");
                }
            }
        }
    }
}

Constraint::Constraint(TemplateKind kind, std::vector<Activity> args)
    : Constraint(ConstraintTemplate{kind, is_counting(kind) ? 1u : 0u}, std::move(args)) {}

std::string Constraint::to_string() const {
    std::string out(kind_name(tmpl_.kind));
    if (is_counting(tmpl_.kind)) out += std::to_string(tmpl_.count);
    out += '[';
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i != 0) out += ',';
        out += args_[i];
    }
    out += ']';
    return out;
}

Dfa compile(const Constraint& c) {
    const auto& args = c.args();
    switch (c.kind()) {
        case TemplateKind::Existence:
        case TemplateKind::Absence:
        case TemplateKind::Exactly: return compile_counting(c.kind(), c.tmpl().count, args[0]);
        case TemplateKind::Init:
            // 0 start, 1 satisfied, 2 trap.
            return build({args[0]}, {{1, 2}, {1, 1}, {2, 2}}, {false, true, false});
        case TemplateKind::Response:
            // roles: A, B, other. 1 = pending B.
            return build(args, {{1, 0, 0}, {1, 0, 1}}, {true, false});
        case TemplateKind::Precedence:
            // 1 = A seen, 2 = trap.
            return build(args, {{1, 2, 0}, {1, 1, 1}, {2, 2, 2}}, {true, true, false});
        case TemplateKind::Succession:
            // 0 no A yet, 1 satisfied after A, 2 pending B, 3 trap.
            return build(args, {{2, 3, 0}, {2, 1, 1}, {2, 1, 2}, {3, 3, 3}},
                         {true, true, false, false});
        case TemplateKind::AlternateResponse:
            // 1 = pending B, a second A before it is fatal.
            return build(args, {{1, 0, 0}, {2, 0, 1}, {2, 2, 2}}, {true, false, false});
        case TemplateKind::AlternatePrecedence:
            // 1 = an A is available for the next B.
            return build(args, {{1, 2, 0}, {1, 0, 1}, {2, 2, 2}}, {true, true, false});
        case TemplateKind::AlternateSuccession:
            return build(args, {{1, 2, 0}, {2, 0, 1}, {2, 2, 2}}, {true, false, false});
        case TemplateKind::CoExistence:
            // 0 none, 1 only A, 2 only B, 3 both.
            return build(args, {{1, 2, 0}, {1, 3, 1}, {3, 2, 2}, {3, 3, 3}},
                         {true, false, false, true});
        case TemplateKind::NotCoExistence:
            return build(args, {{1, 2, 0}, {1, 3, 1}, {3, 2, 2}, {3, 3, 3}},
                         {true, true, true, false});
        case TemplateKind::NotSuccession:
            return build(args, {{1, 0, 0}, {1, 2, 1}, {2, 2, 2}}, {true, true, false});
        case TemplateKind::NotChainSuccession:
            if (args[0] == args[1]) {
                // 1 = previous event was A.
                return build({args[0]}, {{1, 0}, {2, 0}, {2, 2}}, {true, true, false});
            }
            // Any other activity breaks adjacency, so the default column resets.
            return build(args, {{1, 0, 0}, {1, 2, 0}, {2, 2, 2}}, {true, true, false});
        case TemplateKind::Interposition:
            // roles: A, B, C, other. 1 = after A, B required and C forbidden.
            return build(args, {{1, 0, 0, 0}, {1, 0, 2, 1}, {2, 2, 2, 2}}, {true, false, false});
        case TemplateKind::BalancedEnablement:
            // 0: #A = #B, 1: #A = #B + 1, 2: #B = #A + 1, 3 trap.
            return build(args, {{1, 2, 0, 0}, {3, 0, 3, 1}, {0, 3, 3, 2}, {3, 3, 3, 3}},
                         {true, false, false, false});
        case TemplateKind::ChainResponse:
        case TemplateKind::ChainPrecedence:
        case TemplateKind::ChainSuccession: break;
    }
    throw UnsupportedTemplate("no automaton is provided for " + std::string(kind_name(c.kind())));
}

bool is_activation(const Constraint& c, std::string_view activity) {
    const auto& args = c.args();
    switch (c.kind()) {
        case TemplateKind::Existence:
        case TemplateKind::Absence:
        case TemplateKind::Exactly:
        case TemplateKind::Init: return true;
        case TemplateKind::Response:
        case TemplateKind::AlternateResponse:
        case TemplateKind::NotSuccession:
        case TemplateKind::NotChainSuccession:
        case TemplateKind::Interposition:
        case TemplateKind::ChainResponse: return activity == args[0];
        case TemplateKind::Precedence:
        case TemplateKind::AlternatePrecedence:
        case TemplateKind::ChainPrecedence: return activity == args[1];
        case TemplateKind::Succession:
        case TemplateKind::AlternateSuccession:
        case TemplateKind::CoExistence:
        case TemplateKind::NotCoExistence:
        case TemplateKind::ChainSuccession: return activity == args[0] || activity == args[1];
        case TemplateKind::BalancedEnablement:
            return activity == args[0] || activity == args[1] || activity == args[2];
    }
    return false;
}

EvaluationResult evaluate(const Constraint& c, const Trace& trace) {
    const Dfa dfa = compile(c);
    EvaluationResult result;
    for (const auto& a : trace) {
        if (is_activation(c, a)) ++result.activations;
    }
    if (!accepts(dfa, trace)) {
        result.status = EvaluationStatus::Violated;
    } else {
        result.status = result.activations == 0 ? EvaluationStatus::VacuouslySatisfied
                                                : EvaluationStatus::Satisfied;
    }
    return result;
}

}  // namespace procframe
