#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"

namespace procframe {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;

/// Token count per place, indexed by PlaceId.
using Marking = std::vector<std::uint32_t>;

struct Transition {
    std::string id;
    std::optional<Activity> label;  // nullopt for silent transitions
    std::vector<PlaceId> inputs;
    std::vector<PlaceId> outputs;

    bool silent() const { return !label.has_value(); }
    bool operator==(const Transition&) const = default;
};

/// Labeled place/transition net with unit arc weights, an initial marking and a non-empty
/// set of final markings. Built incrementally; call validate() (or any operation that
/// needs a well-formed net) once complete.
class PetriNet {
public:
    PlaceId add_place(std::string id);
    TransitionId add_transition(std::string id, std::optional<Activity> label);
    void add_input_arc(PlaceId place, TransitionId transition);
    void add_output_arc(TransitionId transition, PlaceId place);

    /// Adds a transition with its arcs in one call.
    TransitionId add_transition(std::string id, std::optional<Activity> label,
                                std::vector<PlaceId> inputs, std::vector<PlaceId> outputs);

    void set_initial(Marking m);
    void add_final(Marking m);
    /// Marking with one token in each listed place.
    Marking marking_of(const std::vector<PlaceId>& places) const;

    std::size_t num_places() const { return places_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    const std::vector<std::string>& places() const { return places_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const Transition& transition(TransitionId t) const { return transitions_.at(t); }
    const Marking& initial() const { return initial_; }
    const std::vector<Marking>& finals() const { return finals_; }

    std::optional<PlaceId> find_place(std::string_view id) const;
    std::optional<TransitionId> find_transition(std::string_view id) const;

    /// Sorted set of visible labels.
    ActivitySet labels() const;

    /// Throws InvalidArgument when a transition lacks an input or output place, when the
    /// final set is empty, or when markings have the wrong size.
    void validate() const;

    bool operator==(const PetriNet&) const = default;

private:
    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    Marking initial_;
    std::vector<Marking> finals_;
};

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m);

/// Throws NotEnabled when `t` is not enabled in `m`.
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);

struct ReachabilityGraph {
    struct Edge {
        std::size_t from;
        TransitionId transition;
        std::size_t to;
    };
    std::vector<Marking> markings;  // markings[0] is the initial marking
    std::vector<Edge> edges;
};

/// Breadth-first reachability graph. Throws UnboundedNet past `state_cap` markings.
ReachabilityGraph reachability(const PetriNet& net, std::size_t state_cap = kDefaultStateCap);

/// True if no reachable marking puts more than one token in a place.
bool is_one_safe(const PetriNet& net, std::size_t state_cap = kDefaultStateCap);

/// Minimal automaton of the visible-label language between the initial marking and any
/// final marking. Explicit symbols are the visible labels; every other activity leads to
/// the trap state (the net is closed within its own alphabet).
Dfa net_to_dfa(const PetriNet& net, std::size_t state_cap = kDefaultStateCap);

/// Token-game acceptance over sets of markings, without building the automaton.
bool net_accepts(const PetriNet& net, const Trace& trace, std::size_t state_cap = kDefaultStateCap);

std::string net_to_dot(const PetriNet& net, std::string_view name = "net");

}  // namespace procframe
