#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "procframe/core.hpp"

namespace procframe {

using StateId = std::uint32_t;

inline constexpr std::size_t kDefaultStateCap = 100'000;

/// Total deterministic automaton over an open alphabet.
///
/// The automaton distinguishes a sorted set of explicit symbols. Every state has one
/// successor per explicit symbol plus a default successor taken for any activity that is
/// not explicit (the "other" class). Transitions are stored row-major: row `s` holds the
/// successors for symbols 0..k-1 followed by the default successor in column k.
class Dfa {
public:
    /// `symbols` must be sorted and unique; `table` has `num_states * (symbols.size() + 1)`
    /// entries. Throws InvalidArgument on malformed input.
    Dfa(std::vector<Activity> symbols, std::size_t num_states, StateId initial,
        std::vector<bool> accepting, std::vector<StateId> table);

    /// One state, accepting everything.
    static Dfa universal();
    /// One state, accepting nothing.
    static Dfa empty_language();

    std::size_t num_states() const { return accepting_.size(); }
    StateId initial() const { return initial_; }
    bool is_accepting(StateId s) const { return accepting_[s]; }
    const std::vector<bool>& accepting() const { return accepting_; }
    const std::vector<Activity>& symbols() const { return symbols_; }
    std::size_t num_columns() const { return symbols_.size() + 1; }
    std::size_t default_column() const { return symbols_.size(); }
    const std::vector<StateId>& table() const { return table_; }

    /// Column of `activity`, or default_column() when it is not explicit.
    std::size_t column_of(std::string_view activity) const;
    std::optional<std::size_t> symbol_index(std::string_view activity) const;

    StateId next(StateId s, std::size_t column) const { return table_[s * num_columns() + column]; }
    StateId step(StateId s, std::string_view activity) const { return next(s, column_of(activity)); }
    StateId default_successor(StateId s) const { return next(s, default_column()); }

    /// Runs `trace` from the initial state.
    StateId run(const Trace& trace) const;

    bool operator==(const Dfa& other) const = default;

private:
    std::vector<Activity> symbols_;
    StateId initial_;
    std::vector<bool> accepting_;
    std::vector<StateId> table_;
};

bool accepts(const Dfa& dfa, const Trace& trace);

/// States from which no accepting state is reachable.
std::vector<bool> dead_states(const Dfa& dfa);

/// Makes `dfa` a specification over `local_alphabet`: every activity outside the local
/// alphabet becomes a self-loop, activities in `local_alphabet` that are not explicit keep
/// the original default behavior. Throws AlphabetMismatch unless the explicit symbols are a
/// subset of `local_alphabet`.
Dfa embed(const Dfa& dfa, const ActivitySet& local_alphabet);

/// Synchronous product over the union of explicit symbols; language is the intersection.
/// The result is trimmed to reachable states. Throws StateBudgetExceeded past `state_cap`.
Dfa product(std::span<const Dfa> dfas, std::size_t state_cap = kDefaultStateCap);

/// Intersection of many automata, minimizing after every pairwise step. Language equals
/// that of product(); the result is minimal.
Dfa intersect_all(std::span<const Dfa> dfas, std::size_t state_cap = kDefaultStateCap);

Dfa complement(const Dfa& dfa);

/// Reachable, minimal, canonically numbered (breadth-first from the initial state,
/// symbols in sorted order, default column last).
Dfa minimize(const Dfa& dfa);

/// Shortest trace in the symmetric difference of the two languages, or nullopt when they
/// are equal. The "other" class is represented in the trace by fresh_symbol(a, b).
std::optional<Trace> find_counterexample(const Dfa& a, const Dfa& b);

bool equivalent(const Dfa& a, const Dfa& b);

/// A name not explicit in either automaton, used to witness the default class.
Activity fresh_symbol(const Dfa& a, const Dfa& b);

/// All accepted traces realizable by runs visiting no state more than `revisit_bound + 1`
/// times, using explicit symbols only. Sorted lexicographically; no duplicates.
std::vector<Trace> enumerate(const Dfa& dfa, unsigned revisit_bound);

/// Graphviz rendering. With `hide_trap`, dead states and arcs into them are omitted and
/// default arcs are labeled with the negated list of symbols that leave by other arcs.
std::string to_dot(const Dfa& dfa, bool hide_trap, std::string_view name = "dfa");

}  // namespace procframe
