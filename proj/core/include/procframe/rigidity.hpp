#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"
#include "procframe/declare.hpp"
#include "procframe/frame.hpp"
#include "procframe/miner.hpp"
#include "procframe/petri.hpp"

namespace procframe {

/// Relative activity cardinality interval.
enum class Cardinality { None, OneOne, OneMany, ZeroOne, ZeroMany };

/// "1..1", "1..n", "0..1", "0..n" or "none".
std::string_view cardinality_name(Cardinality c);

/// The template combination a cardinality class was read from.
enum class CardinalityRule {
    None,
    AlternateSuccession,
    SuccessionAlternateResponse,
    SuccessionAlternatePrecedence,
    AlternatePrecedence,
    AlternateResponse,
    Precedence,
    Response,
};

std::string_view rule_name(CardinalityRule r);

struct PairCardinality {
    Cardinality outgoing = Cardinality::None;
    Cardinality incoming = Cardinality::None;
    CardinalityRule outgoing_rule = CardinalityRule::None;
    CardinalityRule incoming_rule = CardinalityRule::None;

    bool operator==(const PairCardinality&) const = default;
};

/// Cardinality classes per ordered activity pair. Pairs without any relevant constraint are
/// absent and read as None.
class CardinalityProfile {
public:
    PairCardinality at(const Activity& a, const Activity& b) const;
    void set(const Activity& a, const Activity& b, PairCardinality c) { pairs_[{a, b}] = c; }
    const std::map<std::pair<Activity, Activity>, PairCardinality>& pairs() const { return pairs_; }

private:
    std::map<std::pair<Activity, Activity>, PairCardinality> pairs_;
};

/// Class of each pair from its relation templates. Each direction takes the first matching
/// row in order of narrowing interval:
///   outgoing: AlternateSuccession 1..1, Succession+AlternateResponse 1..n,
///             AlternatePrecedence 0..1, AlternateResponse 1..n, Precedence 0..n;
///   incoming: AlternateSuccession 1..1, Succession+AlternatePrecedence 1..n,
///             AlternatePrecedence 1..n, AlternateResponse 0..1, Response 0..n.
CardinalityProfile cardinality_profile(const std::vector<Constraint>& constraints);
CardinalityProfile cardinality_profile(const MinedModel& model);

enum class Construct { Sequence, Parallel, Xor, Or };
enum class Variant { Mandatory, Optional, MandatoryRepeatable, OptionalRepeatable };

std::string_view construct_name(Construct c);
std::string_view variant_name(Variant v);
bool is_optional(Variant v);
bool is_repeatable(Variant v);
Variant make_variant(bool optional, bool repeatable);

/// A procedural block found among mined constraints: a region of branches bracketed by
/// predecessor and follower chains.
struct DetectedFragment {
    Construct construct{};
    Variant variant{};
    std::vector<Activity> predecessors;            // chain leading into the region, in order
    std::vector<std::vector<Activity>> branches;   // one activity sequence per branch
    std::vector<Activity> followers;               // chain leaving the region, in order
    std::vector<Constraint> consumed;              // sorted
    PetriNet net;
    /// Set for repeatable Or blocks, whose declarative and procedural languages differ.
    bool approximate = false;
    /// Why the fragment was rejected, when it was.
    std::optional<Trace> counterexample;

    ActivitySet activities() const;
};

struct FrameRewrite {
    std::vector<DetectedFragment> fragments;  // accepted, validated
    std::vector<DetectedFragment> rejected;   // approximate or failing validation
    std::vector<Constraint> residual;         // sorted
    ProcessFrame frame;
    /// nullopt when the frame is equivalent to the mined model.
    std::optional<Trace> counterexample;

    bool equivalent() const { return !counterexample.has_value(); }
};

struct DetectOptions {
    /// Activity excluded from fragments (the artificial start).
    std::optional<Activity> start = Activity(kDefaultStartActivity);
    /// Revisit bound of the branch-recurrence search for repeatable Or blocks.
    unsigned revisit_bound = 2;
    std::size_t state_cap = kDefaultStateCap;
};

/// Finds procedural blocks in `model`, rewrites each into a net and validates the resulting
/// frame against mined_dfa(model), rolling back fragments that break equivalence.
FrameRewrite detect(const MinedModel& model, const EventLog& log, const DetectOptions& options = {});

/// Cyclic net for a fragment: the source place is both initially marked and final; the
/// predecessor chain leads to the region, the follower chain returns to the source.
/// Optionality adds a silent skip around the region, repeatability a silent loop back.
PetriNet synthesize_net(const DetectedFragment& fragment);

/// nullopt when global_dfa(frame) and `reference` have the same language, otherwise a
/// shortest trace on which they differ.
std::optional<Trace> validate_rewrite(const ProcessFrame& frame, const Dfa& reference,
                                      std::size_t state_cap = kDefaultStateCap);

/// Frame of one net specification per fragment plus a declarative specification named
/// "residual" over `alphabet`.
ProcessFrame assemble_frame(const std::vector<DetectedFragment>& fragments, const std::vector<Constraint>& residual,
                            const ActivitySet& alphabet);

/// True if the first activity of some branch occurs a second time within one iteration
/// while another branch has started and not yet completed. An iteration begins at each
/// occurrence of `iteration_start`; without one the whole trace is one iteration.
bool has_branch_recurrence(const Trace& trace, const std::vector<std::vector<Activity>>& branches,
                           const std::optional<Activity>& iteration_start = std::nullopt);

}  // namespace procframe
