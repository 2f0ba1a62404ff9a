#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace procframe {

/// An activity label. Names are non-empty and never contain `,`, `;` or a line break.
using Activity = std::string;

/// Sorted set of activities; iteration order is the canonical symbol order everywhere.
using ActivitySet = std::set<Activity>;

/// A finite activity sequence. May be empty.
using Trace = std::vector<Activity>;

/// Name of the artificial start activity prepended to traces before discovery.
inline constexpr std::string_view kDefaultStartActivity = "__START__";

bool is_valid_activity(std::string_view name);

/// Throws InvalidArgument unless `name` is a valid activity name.
void require_valid_activity(std::string_view name);

/// Renders a trace as `<a,b,c>`; the empty trace is `<>`.
std::string format_trace(const Trace& trace);

/// An ordered multiset of traces with its alphabet cached at construction.
class EventLog {
public:
    EventLog() = default;
    explicit EventLog(std::vector<Trace> traces);
    EventLog(std::initializer_list<Trace> traces) : EventLog(std::vector<Trace>(traces)) {}

    const std::vector<Trace>& traces() const { return traces_; }
    const ActivitySet& alphabet() const { return alphabet_; }

    std::size_t size() const { return traces_.size(); }
    bool empty() const { return traces_.empty(); }

    auto begin() const { return traces_.begin(); }
    auto end() const { return traces_.end(); }

    bool operator==(const EventLog& other) const { return traces_ == other.traces_; }

private:
    std::vector<Trace> traces_;
    ActivitySet alphabet_;
};

/// Subsequence of `trace` restricted to the activities in `alphabet`.
Trace project(const Trace& trace, const ActivitySet& alphabet);

ActivitySet log_alphabet(const EventLog& log);

/// Prepends `start` to every trace. Throws StartSymbolClash if `start` already occurs.
EventLog prepend_start(const EventLog& log, const Activity& start);

using SymbolId = std::uint32_t;

/// Dense interning of an alphabet: ids follow the lexicographic order of the names,
/// so the mapping is reproducible across runs.
class SymbolTable {
public:
    SymbolTable() = default;
    explicit SymbolTable(const ActivitySet& alphabet);

    std::optional<SymbolId> find(std::string_view name) const;
    const Activity& name(SymbolId id) const { return names_[id]; }
    std::size_t size() const { return names_.size(); }
    const std::vector<Activity>& names() const { return names_; }

    /// Interns a trace; throws UnknownActivity for names outside the table.
    std::vector<SymbolId> intern(const Trace& trace) const;

private:
    std::vector<Activity> names_;
};

}  // namespace procframe
