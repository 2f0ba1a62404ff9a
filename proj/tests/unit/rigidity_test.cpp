#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <procframe/declare.hpp>
#include <procframe/error.hpp>
#include <procframe/miner.hpp>
#include <procframe/rigidity.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace procframe;
using K = TemplateKind;

const std::vector<Variant> kVariants{Variant::Mandatory, Variant::Optional, Variant::MandatoryRepeatable,
                                     Variant::OptionalRepeatable};

struct Detected {
    MinedModel model;
    EventLog log;
    FrameRewrite rewrite;
};

Detected run_detect(const PetriNet& net) {
    Detected d;
    d.log = EventLog(enumerate(net_to_dfa(net), 2));
    MinerConfig cfg;
    cfg.include_start = true;
    d.model = mine(d.log, cfg);
    d.rewrite = detect(d.model, d.log);
    return d;
}

TEST(Cardinality, TableRows) {
    auto profile_of = [](std::vector<Constraint> cs) { return cardinality_profile(cs).at("A", "B"); };
    const auto alt = profile_of({Constraint(K::AlternateSuccession, {"A", "B"})});
    EXPECT_EQ(alt.outgoing, Cardinality::OneOne);
    EXPECT_EQ(alt.incoming, Cardinality::OneOne);
    const auto loop = profile_of({Constraint(K::Succession, {"A", "B"}), Constraint(K::AlternateResponse, {"A", "B"})});
    EXPECT_EQ(loop.outgoing, Cardinality::OneMany);
    EXPECT_EQ(loop.outgoing_rule, CardinalityRule::SuccessionAlternateResponse);
    const auto prec = profile_of({Constraint(K::Precedence, {"A", "B"})});
    EXPECT_EQ(prec.outgoing, Cardinality::ZeroMany);
    EXPECT_EQ(prec.incoming, Cardinality::None);
    const auto ar = profile_of({Constraint(K::AlternateResponse, {"A", "B"})});
    EXPECT_EQ(ar.outgoing, Cardinality::OneMany);
    EXPECT_EQ(ar.incoming, Cardinality::ZeroOne);
    EXPECT_EQ(profile_of({Constraint(K::Response, {"A", "B"})}).incoming, Cardinality::ZeroMany);
    EXPECT_EQ(profile_of({}).outgoing, Cardinality::None);
}

TEST(Cardinality, NarrowestRowWins) {
    const auto p = cardinality_profile(std::vector<Constraint>{
        Constraint(K::Precedence, {"A", "B"}), Constraint(K::AlternatePrecedence, {"A", "B"}),
        Constraint(K::AlternateSuccession, {"A", "B"}), Constraint(K::Response, {"A", "B"})});
    EXPECT_EQ(p.at("A", "B").outgoing, Cardinality::OneOne);
    EXPECT_EQ(p.at("A", "B").incoming_rule, CardinalityRule::AlternateSuccession);
}

// Occurrences of B per A-iteration (from one A to the next A or the end) over all traces of
// the combination, and occurrences of A per B-iteration read backwards.
std::pair<std::set<std::size_t>, std::set<std::size_t>> observed_counts(const Dfa& d) {
    std::set<std::size_t> out, in;
    for (const auto& t : oracles::all_traces({"A", "B"}, 6)) {
        if (!accepts(d, t)) continue;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == "A") {
                std::size_t n = 0;
                for (std::size_t j = i + 1; j < t.size() && t[j] != "A"; ++j) n += t[j] == "B";
                out.insert(n);
            } else {
                std::size_t n = 0;
                for (std::size_t j = i; j-- > 0 && t[j] != "B";) n += t[j] == "A";
                in.insert(n);
            }
        }
    }
    return {out, in};
}

Cardinality interval(const std::set<std::size_t>& counts) {
    if (counts.empty()) return Cardinality::None;
    const bool zero = counts.contains(0);
    const bool many = *counts.rbegin() > 1;
    if (zero) return many ? Cardinality::ZeroMany : Cardinality::ZeroOne;
    return many ? Cardinality::OneMany : Cardinality::OneOne;
}

TEST(Cardinality, RoundTripThroughEnumeration) {
    struct Row {
        std::vector<K> kinds;
        bool outgoing;  // which direction the row defines
    };
    const std::vector<Row> rows{
        {{K::AlternateSuccession}, true},
        {{K::Succession, K::AlternateResponse}, true},
        {{K::Succession, K::AlternatePrecedence}, false},
        {{K::AlternatePrecedence}, true},
        {{K::AlternateResponse}, true},
        {{K::Precedence}, true},
        {{K::Response}, false},
    };
    for (const auto& row : rows) {
        std::vector<Constraint> cs;
        std::vector<Dfa> dfas;
        for (K k : row.kinds) {
            cs.emplace_back(k, std::vector<Activity>{"A", "B"});
            dfas.push_back(compile(cs.back()));
        }
        const auto [out, in] = observed_counts(product(dfas));
        const auto declared = cardinality_profile(cs).at("A", "B");
        if (row.outgoing) {
            EXPECT_EQ(declared.outgoing, interval(out)) << kind_name(row.kinds[0]);
        } else {
            EXPECT_EQ(declared.incoming, interval(in)) << kind_name(row.kinds[0]);
        }
    }
}

TEST(Variants, NamesAndFlags) {
    EXPECT_EQ(construct_name(Construct::Xor), "Xor");
    EXPECT_EQ(variant_name(Variant::OptionalRepeatable), "OptionalRepeatable");
    for (bool o : {false, true}) {
        for (bool r : {false, true}) {
            EXPECT_EQ(is_optional(make_variant(o, r)), o);
            EXPECT_EQ(is_repeatable(make_variant(o, r)), r);
        }
    }
}

TEST(SynthesizeNet, MatchesReferenceNets) {
    for (auto [construct, variant] : fixtures::detectable_variants()) {
        DetectedFragment f;
        f.construct = construct;
        f.variant = variant;
        f.predecessors = {"A"};
        f.followers = {"D"};
        switch (construct) {
            case Construct::Sequence: f.branches = {{"B", "C"}}; break;
            default: f.branches = {{"B1", "B2"}, {"C1", "C2"}}; break;
        }
        const PetriNet net = synthesize_net(f);
        const PetriNet ref = fixtures::variant_net(construct, variant);
        EXPECT_EQ(net.labels(), f.activities());
        EXPECT_TRUE(is_one_safe(net));
        EXPECT_TRUE(equivalent(net_to_dfa(net), net_to_dfa(ref))) << fixtures::variant_label(construct, variant);
    }
}

TEST(SynthesizeNet, SmallXorHasNoSilents) {
    DetectedFragment f;
    f.construct = Construct::Xor;
    f.variant = Variant::Mandatory;
    f.branches = {{"B"}, {"C"}};
    f.followers = {"D"};
    const PetriNet net = synthesize_net(f);
    EXPECT_TRUE(std::none_of(net.transitions().begin(), net.transitions().end(), [](const Transition& t) { return t.silent(); }));
    EXPECT_EQ(enumerate(net_to_dfa(net), 1), (std::vector<Trace>{{}, {"B", "D"}, {"C", "D"}}));
    f.branches = {};
    EXPECT_THROW(synthesize_net(f), InvalidArgument);
}

TEST(Detect, FourteenVariantsExactly) {
    for (auto [construct, variant] : fixtures::detectable_variants()) {
        const auto label = fixtures::variant_label(construct, variant);
        const Detected d = run_detect(fixtures::variant_net(construct, variant));
        const auto& rw = d.rewrite;
        ASSERT_EQ(rw.fragments.size(), 1u) << label;
        EXPECT_EQ(rw.fragments[0].construct, construct) << label;
        EXPECT_EQ(rw.fragments[0].variant, variant) << label;
        EXPECT_FALSE(rw.fragments[0].approximate) << label;
        EXPECT_TRUE(rw.equivalent()) << label;
        EXPECT_FALSE(validate_rewrite(rw.frame, mined_dfa(d.model))) << label;
    }
}

TEST(Detect, ConsumedAndResidualPartitionTheModel) {
    for (auto [construct, variant] : fixtures::detectable_variants()) {
        const Detected d = run_detect(fixtures::variant_net(construct, variant));
        std::vector<Constraint> all = d.rewrite.residual;
        for (const auto& f : d.rewrite.fragments) {
            all.insert(all.end(), f.consumed.begin(), f.consumed.end());
            EXPECT_TRUE(std::is_sorted(f.consumed.begin(), f.consumed.end()));
            EXPECT_EQ(f.net.labels(), f.activities());
        }
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, d.model.constraints) << fixtures::variant_label(construct, variant);
    }
}

TEST(Detect, OptionalSequenceConsumesAlternatePrecedence) {
    const Detected d = run_detect(fixtures::variant_net(Construct::Sequence, Variant::Optional));
    ASSERT_EQ(d.rewrite.fragments.size(), 1u);
    const auto& consumed = d.rewrite.fragments[0].consumed;
    for (const char* b : {"B", "C"}) {
        EXPECT_TRUE(std::binary_search(consumed.begin(), consumed.end(), Constraint(K::AlternatePrecedence, {"A", b}))) << b;
    }
}

TEST(Detect, MandatoryParallelConsumesElevenAlternateSuccessions) {
    const Detected d = run_detect(fixtures::parallel2x2_net());
    ASSERT_EQ(d.rewrite.fragments.size(), 1u);
    const auto& consumed = d.rewrite.fragments[0].consumed;
    EXPECT_EQ(std::count_if(consumed.begin(), consumed.end(), [](const Constraint& c) { return c.kind() == K::AlternateSuccession; }), 11);
}

TEST(Detect, VariantMutationBreaksValidation) {
    for (auto [construct, variant] : fixtures::detectable_variants()) {
        const Detected d = run_detect(fixtures::variant_net(construct, variant));
        ASSERT_EQ(d.rewrite.fragments.size(), 1u);
        const Dfa reference = mined_dfa(d.model);
        for (Variant other : kVariants) {
            if (other == variant) continue;
            auto fragments = d.rewrite.fragments;
            fragments[0].variant = other;
            fragments[0].net = synthesize_net(fragments[0]);
            const auto cx = validate_rewrite(assemble_frame(fragments, d.rewrite.residual, d.model.alphabet), reference);
            EXPECT_TRUE(cx.has_value()) << fixtures::variant_label(construct, variant) << " as " << variant_name(other);
        }
    }
}

TEST(Detect, OptionalMislabeledMandatoryShowsSkippedRegion) {
    const Detected d = run_detect(fixtures::variant_net(Construct::Sequence, Variant::Optional));
    auto fragments = d.rewrite.fragments;
    fragments[0].variant = Variant::Mandatory;
    fragments[0].net = synthesize_net(fragments[0]);
    const auto cx = validate_rewrite(assemble_frame(fragments, d.rewrite.residual, d.model.alphabet), mined_dfa(d.model));
    ASSERT_TRUE(cx);
    const Trace visible = project(*cx, {"A", "B", "C", "D"});
    EXPECT_EQ(visible, (Trace{"A", "D"}));
}

TEST(Detect, RepeatableOrIsApproximate) {
    for (Variant v : {Variant::MandatoryRepeatable, Variant::OptionalRepeatable}) {
        const Detected d = run_detect(fixtures::variant_net(Construct::Or, v));
        EXPECT_TRUE(d.rewrite.fragments.empty());
        ASSERT_EQ(d.rewrite.rejected.size(), 1u);
        const auto& f = d.rewrite.rejected[0];
        EXPECT_EQ(f.construct, Construct::Or);
        EXPECT_EQ(f.variant, v);
        EXPECT_TRUE(f.approximate);
        ASSERT_TRUE(f.counterexample);
        EXPECT_TRUE(has_branch_recurrence(*f.counterexample, f.branches, Activity("A")));
        EXPECT_TRUE(d.rewrite.equivalent());  // everything stays declarative
    }
}

TEST(Detect, IdentityRewriteIsValid) {
    const MinedModel m = mine(EventLog({{"A", "B"}, {"B"}}));
    const ProcessFrame frame = assemble_frame({}, m.constraints, m.alphabet);
    EXPECT_FALSE(validate_rewrite(frame, mined_dfa(m)));
}

TEST(Detect, RerunOnResidualAddsNothing) {
    const Detected d = run_detect(fixtures::variant_net(Construct::Xor, Variant::Optional));
    MinedModel residual{d.rewrite.residual, d.model.alphabet, {}};
    const FrameRewrite again = detect(residual, d.log);
    EXPECT_TRUE(again.fragments.empty());
    EXPECT_TRUE(again.equivalent());
}

TEST(Detect, DeterministicOutput) {
    const Detected a = run_detect(fixtures::variant_net(Construct::Parallel, Variant::OptionalRepeatable));
    const Detected b = run_detect(fixtures::variant_net(Construct::Parallel, Variant::OptionalRepeatable));
    ASSERT_EQ(a.rewrite.fragments.size(), b.rewrite.fragments.size());
    EXPECT_EQ(a.rewrite.fragments[0].consumed, b.rewrite.fragments[0].consumed);
    EXPECT_EQ(a.rewrite.fragments[0].net, b.rewrite.fragments[0].net);
    EXPECT_EQ(a.rewrite.residual, b.rewrite.residual);
}

TEST(Detect, NonBlockNetsStaySafe) {
    for (const auto& n : fixtures::non_block_nets()) {
        const Detected d = run_detect(n.net);
        EXPECT_TRUE(d.rewrite.equivalent()) << n.name;
    }
}

TEST(BranchRecurrence, Patterns) {
    const std::vector<std::vector<Activity>> br{{"B1", "B2"}, {"C1", "C2"}};
    EXPECT_TRUE(has_branch_recurrence({"A", "B1", "C1", "B2", "B1", "B2", "C2", "D"}, br));
    // Legitimate repetitions: one branch alone, or both branches joined before restarting.
    EXPECT_FALSE(has_branch_recurrence({"A", "B1", "B2", "B1", "B2", "D"}, br));
    EXPECT_FALSE(has_branch_recurrence({"A", "B1", "C1", "B2", "C2", "C1", "B1", "B2", "C2", "D"}, br));
    // A new iteration resets the history.
    EXPECT_FALSE(has_branch_recurrence({"A", "C1", "B1", "B2", "D", "A", "B1", "C2", "D"}, br, Activity("A")));
    EXPECT_FALSE(has_branch_recurrence({}, br));
}

}  // namespace
