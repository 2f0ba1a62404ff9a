#include "procframe/core.hpp"

#include <algorithm>

#include "procframe/error.hpp"

namespace procframe {

bool is_valid_activity(std::string_view name) {
    if (name.empty()) return false;
    return name.find_first_of(",;\n\r") == std::string_view::npos;
}

void require_valid_activity(std::string_view name) {
    if (!is_valid_activity(name)) {
        throw InvalidArgument("invalid activity name '" + std::string(name) + "'");
    }
}

std::string format_trace(const Trace& trace) {
    std::string out = "<";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i != 0) out += ',';
        out += trace[i];
    }
    out += '>';
    return out;
}

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
    for (const auto& trace : traces_) alphabet_.insert(trace.begin(), trace.end());
}

Trace project(const Trace& trace, const ActivitySet& alphabet) {
    Trace out;
    out.reserve(trace.size());
    std::copy_if(trace.begin(), trace.end(), std::back_inserter(out),
                 [&](const Activity& a) { return alphabet.contains(a); });
    return out;
}

ActivitySet log_alphabet(const EventLog& log) { return log.alphabet(); }

EventLog prepend_start(const EventLog& log, const Activity& start) {
    require_valid_activity(start);
    if (log.alphabet().contains(start)) {
        throw StartSymbolClash("start activity '" + start + "' already occurs in the log");
    }
    std::vector<Trace> traces;
    traces.reserve(log.size());
    for (const auto& trace : log) {
        Trace t;
        t.reserve(trace.size() + 1);
        t.push_back(start);
        t.insert(t.end(), trace.begin(), trace.end());
        traces.push_back(std::move(t));
    }
    return EventLog(std::move(traces));
}

SymbolTable::SymbolTable(const ActivitySet& alphabet) : names_(alphabet.begin(), alphabet.end()) {}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name,
                               [](const Activity& a, std::string_view b) { return a < b; });
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<SymbolId>(it - names_.begin());
}

std::vector<SymbolId> SymbolTable::intern(const Trace& trace) const {
    std::vector<SymbolId> out;
    out.reserve(trace.size());
    for (const auto& a : trace) {
        auto id = find(a);
        if (!id) throw UnknownActivity("activity '" + a + "' is not in the symbol table");
        out.push_back(*id);
    }
    return out;
}

}  // namespace procframe
