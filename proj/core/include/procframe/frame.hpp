#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"
#include "procframe/declare.hpp"
#include "procframe/petri.hpp"

namespace procframe {

/// Sorted, duplicate-free set of constraints.
using DeclareSet = std::vector<Constraint>;

DeclareSet make_declare_set(std::vector<Constraint> constraints);

/// Activities referenced by any constraint.
ActivitySet referenced_activities(const DeclareSet& set);

/// True if some constraint depends on adjacency (see is_position_sensitive).
bool is_position_sensitive(const DeclareSet& set);

/// A named local specification: an alphabet plus a behavior over it.
///
/// The alphabet may be larger than the activities the body mentions. For a declarative
/// body the extra activities are unrestricted; for a net or raw automaton they follow the
/// body's default transitions (for nets: rejected).
class Specification {
public:
    using Body = std::variant<DeclareSet, PetriNet, Dfa>;

    /// When `alphabet` is omitted it is inferred from the body.
    static Specification declare(std::string name, std::vector<Constraint> constraints,
                                 std::optional<ActivitySet> alphabet = std::nullopt);
    static Specification net(std::string name, PetriNet net,
                             std::optional<ActivitySet> alphabet = std::nullopt);
    static Specification raw(std::string name, Dfa dfa,
                             std::optional<ActivitySet> alphabet = std::nullopt);

    const std::string& name() const { return name_; }
    const ActivitySet& alphabet() const { return alphabet_; }
    const Body& body() const { return body_; }

    bool is_declare() const { return std::holds_alternative<DeclareSet>(body_); }
    bool is_net() const { return std::holds_alternative<PetriNet>(body_); }
    bool is_raw() const { return std::holds_alternative<Dfa>(body_); }
    const DeclareSet& constraints() const { return std::get<DeclareSet>(body_); }
    const PetriNet& petri_net() const { return std::get<PetriNet>(body_); }
    const Dfa& dfa() const { return std::get<Dfa>(body_); }

    /// Alphabet this specification observes inside a frame over `frame_alphabet`: its own
    /// alphabet, widened to the whole frame when a position-sensitive constraint is present.
    ActivitySet effective_alphabet(const ActivitySet& frame_alphabet) const;

private:
    Specification(std::string name, ActivitySet alphabet, Body body);

    std::string name_;
    ActivitySet alphabet_;
    Body body_;
};

/// An ordered list of uniquely named specifications.
class ProcessFrame {
public:
    ProcessFrame() = default;
    explicit ProcessFrame(std::vector<Specification> specs);

    /// Throws InvalidArgument on a duplicate name.
    void add(Specification spec);

    const std::vector<Specification>& specs() const { return specs_; }
    std::size_t size() const { return specs_.size(); }
    bool empty() const { return specs_.empty(); }

    /// Throws UnknownSpec.
    const Specification& spec(std::string_view name) const;
    bool contains(std::string_view name) const;

private:
    std::vector<Specification> specs_;
};

ActivitySet all_tasks(const ProcessFrame& frame);
ActivitySet common_tasks(const ProcessFrame& frame);

/// Open-world automaton of a specification over its own alphabet.
Dfa spec_dfa(const Specification& spec, std::size_t state_cap = kDefaultStateCap);

/// Same, over its effective alphabet inside a frame over `frame_alphabet`.
Dfa spec_dfa(const Specification& spec, const ActivitySet& frame_alphabet,
             std::size_t state_cap = kDefaultStateCap);

/// Which specification rejects a trace and, for declarative bodies, the first constraint
/// (in set order) that the projection violates.
struct Violation {
    std::string spec;
    std::optional<Constraint> constraint;
};

/// Checks each specification on its projection of `trace`, without a global automaton.
/// Returns nullopt when every specification accepts. Throws UnknownActivity for events
/// outside all_tasks(frame).
std::optional<Violation> first_violation(const ProcessFrame& frame, const Trace& trace);

bool frame_accepts(const ProcessFrame& frame, const Trace& trace);

/// Minimal automaton of the conjunction of all specifications.
Dfa global_dfa(const ProcessFrame& frame, std::size_t state_cap = kDefaultStateCap);

/// Replaces the named specifications by one raw specification holding their product, placed
/// where the first of them was. Throws UnknownSpec.
ProcessFrame merge_specs(const ProcessFrame& frame, const std::vector<std::string>& names,
                         std::size_t state_cap = kDefaultStateCap);

/// Replaces a declarative specification by one specification per part, all over the original
/// alphabet. `parts` must partition its constraint set. Throws UnknownSpec, NotSplittable for
/// net or raw bodies, InvalidArgument for a non-partition.
ProcessFrame split_spec(const ProcessFrame& frame, std::string_view name,
                        const std::vector<std::vector<Constraint>>& parts);

}  // namespace procframe
