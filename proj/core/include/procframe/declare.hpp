#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"

namespace procframe {

enum class TemplateKind {
    Existence,
    Absence,
    Exactly,
    Init,
    Response,
    Precedence,
    Succession,
    AlternateResponse,
    AlternatePrecedence,
    AlternateSuccession,
    CoExistence,
    NotCoExistence,
    NotSuccession,
    NotChainSuccession,
    Interposition,
    BalancedEnablement,
    // Present for parsing and round-tripping only; compile() rejects them.
    ChainResponse,
    ChainPrecedence,
    ChainSuccession,
};

/// A template kind plus its count parameter (Existence/Absence/Exactly only; 0 otherwise).
struct ConstraintTemplate {
    TemplateKind kind{};
    unsigned count = 0;

    auto operator<=>(const ConstraintTemplate&) const = default;
};

std::size_t arity(TemplateKind kind);
bool is_counting(TemplateKind kind);
bool is_unary(TemplateKind kind);

/// Templates whose semantics depend on adjacency or position in the whole trace, so that
/// activities outside their arguments cannot be ignored (NotChainSuccession, Init and the
/// chain family).
bool is_position_sensitive(TemplateKind kind);

/// The sixteen templates with a compiled automaton, counting templates at count 1.
std::vector<TemplateKind> compilable_kinds();

/// Template name without count, e.g. "AlternateSuccession".
std::string_view kind_name(TemplateKind kind);
std::optional<TemplateKind> kind_from_name(std::string_view name);

/// A template instantiated with activities. Construction validates arity, counts and
/// argument distinctness (NotChainSuccession alone may repeat its argument).
class Constraint {
public:
    Constraint(ConstraintTemplate tmpl, std::vector<Activity> args);
    Constraint(TemplateKind kind, std::vector<Activity> args);

    const ConstraintTemplate& tmpl() const { return tmpl_; }
    TemplateKind kind() const { return tmpl_.kind; }
    const std::vector<Activity>& args() const { return args_; }
    const Activity& arg(std::size_t i) const { return args_.at(i); }
    ActivitySet activities() const { return {args_.begin(), args_.end()}; }

    /// Text form, e.g. `Response[A,B]` or `Existence2[A]`.
    std::string to_string() const;

    auto operator<=>(const Constraint&) const = default;

private:
    ConstraintTemplate tmpl_;
    std::vector<Activity> args_;
};

/// Minimal automaton of the constraint over its arguments. Throws UnsupportedTemplate for
/// the chain family other than NotChainSuccession.
Dfa compile(const Constraint& c);

/// True if an occurrence of `activity` activates `c`.
bool is_activation(const Constraint& c, std::string_view activity);

enum class EvaluationStatus { Satisfied, Violated, VacuouslySatisfied };

struct EvaluationResult {
    EvaluationStatus status{};
    std::size_t activations = 0;

    bool satisfied() const { return status != EvaluationStatus::Violated; }
    bool operator==(const EvaluationResult&) const = default;
};

EvaluationResult evaluate(const Constraint& c, const Trace& trace);

}  // namespace procframe
