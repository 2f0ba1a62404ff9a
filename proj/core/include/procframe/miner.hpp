#pragma once

#include <map>
#include <string>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"
#include "procframe/declare.hpp"

namespace procframe {

struct MinerConfig {
    /// Template kinds to try. Counting kinds are mined at count 1.
    std::vector<TemplateKind> templates = default_templates();
    /// Only 1.0 is accepted.
    double support_threshold = 1.0;
    /// Prepend `start` to every trace before mining.
    bool include_start = false;
    Activity start = Activity(kDefaultStartActivity);
    /// When false, Interposition and BalancedEnablement are skipped even if listed.
    bool ternary_enabled = true;

    /// The cardinality templates, NotChainSuccession and the two ternary templates.
    static std::vector<TemplateKind> default_templates();
    /// Every compilable template, unary ones included.
    static std::vector<TemplateKind> all_templates();
};

struct Provenance {
    std::size_t satisfying_traces = 0;
    std::size_t activating_traces = 0;

    bool operator==(const Provenance&) const = default;
};

struct MinedModel {
    std::vector<Constraint> constraints;  // sorted
    ActivitySet alphabet;
    std::map<Constraint, Provenance> provenance;
};

/// Every candidate constraint satisfied by all traces and activated by at least one.
/// Throws EmptyLog for a log without traces and InvalidArgument for an unsupported config.
MinedModel mine(const EventLog& log, const MinerConfig& cfg = {});

/// Conjunction of the model's constraints, interpreted over the model alphabet.
Dfa mined_dfa(const MinedModel& model, std::size_t state_cap = kDefaultStateCap);

}  // namespace procframe
