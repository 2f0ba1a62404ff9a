#include "fixtures.hpp"

#include <stdexcept>

#include <procframe/declare.hpp>

namespace fixtures {

using namespace procframe;

PlaceId NetBuilder::place(const std::string& id) {
    if (auto p = net_.find_place(id)) return *p;
    return net_.add_place(id);
}

std::vector<PlaceId> NetBuilder::places(const std::vector<std::string>& ids) {
    std::vector<PlaceId> out;
    for (const auto& id : ids) out.push_back(place(id));
    return out;
}

NetBuilder& NetBuilder::visible(const std::string& label, std::vector<std::string> in, std::vector<std::string> out) {
    auto i = places(in);
    auto o = places(out);
    std::string id = "t_" + label;
    for (int k = 2; net_.find_transition(id); ++k) id = "t_" + label + "_" + std::to_string(k);
    net_.add_transition(id, label, i, o);
    return *this;
}

NetBuilder& NetBuilder::silent(std::vector<std::string> in, std::vector<std::string> out) {
    auto i = places(in);
    auto o = places(out);
    net_.add_transition("tau" + std::to_string(++silent_count_), std::nullopt, i, o);
    return *this;
}

NetBuilder& NetBuilder::initial(std::vector<std::string> ps) {
    initial_ = std::move(ps);
    return *this;
}

NetBuilder& NetBuilder::final(std::vector<std::string> ps) {
    finals_.push_back(std::move(ps));
    return *this;
}

PetriNet NetBuilder::build() const {
    PetriNet net = net_;
    auto ids = [&](const std::vector<std::string>& names) {
        std::vector<PlaceId> out;
        for (const auto& n : names) {
            const auto p = net.find_place(n);
            if (!p) throw std::invalid_argument("unknown place " + n);
            out.push_back(*p);
        }
        return out;
    };
    net.set_initial(net.marking_of(ids(initial_)));
    for (const auto& f : finals_) net.add_final(net.marking_of(ids(f)));
    net.validate();
    return net;
}

PetriNet variant_net(Construct construct, Variant variant) {
    NetBuilder b;
    b.visible("A", {"s"}, {"pa"});
    switch (construct) {
        case Construct::Sequence:
            b.visible("B", {"pa"}, {"pb"}).visible("C", {"pb"}, {"pd"});
            break;
        case Construct::Parallel:
            b.silent({"pa"}, {"b0", "c0"})
                .visible("B1", {"b0"}, {"b1"})
                .visible("B2", {"b1"}, {"b2"})
                .visible("C1", {"c0"}, {"c1"})
                .visible("C2", {"c1"}, {"c2"})
                .silent({"b2", "c2"}, {"pd"});
            break;
        case Construct::Xor:
            b.visible("B1", {"pa"}, {"b1"})
                .visible("B2", {"b1"}, {"pd"})
                .visible("C1", {"pa"}, {"c1"})
                .visible("C2", {"c1"}, {"pd"});
            break;
        case Construct::Or:
            b.silent({"pa"}, {"b0", "c0"})
                .silent({"pa"}, {"b0", "cdone"})
                .silent({"pa"}, {"bdone", "c0"})
                .visible("B1", {"b0"}, {"b1"})
                .visible("B2", {"b1"}, {"bdone"})
                .visible("C1", {"c0"}, {"c1"})
                .visible("C2", {"c1"}, {"cdone"})
                .silent({"bdone", "cdone"}, {"pd"});
            break;
    }
    if (is_optional(variant)) b.silent({"pa"}, {"pd"});
    if (is_repeatable(variant)) b.silent({"pd"}, {"pa"});
    b.visible("D", {"pd"}, {"s"});
    return b.initial({"s"}).final({"s"}).build();
}

std::string variant_label(Construct construct, Variant variant) {
    return std::string(construct_name(construct)) + "/" + std::string(variant_name(variant));
}

std::vector<std::pair<Construct, Variant>> detectable_variants() {
    std::vector<std::pair<Construct, Variant>> out;
    for (Construct c : {Construct::Sequence, Construct::Parallel, Construct::Xor, Construct::Or}) {
        for (Variant v : {Variant::Mandatory, Variant::Optional, Variant::MandatoryRepeatable,
                          Variant::OptionalRepeatable}) {
            if (c == Construct::Or && is_repeatable(v)) continue;
            out.emplace_back(c, v);
        }
    }
    return out;
}

PetriNet sequence4_net() { return variant_net(Construct::Sequence, Variant::Mandatory); }
PetriNet parallel2x2_net() { return variant_net(Construct::Parallel, Variant::Mandatory); }

PetriNet interplay_m1() {
    return NetBuilder()
        .visible("A", {"p0"}, {"p1"})
        .visible("B", {"p1"}, {"p2"})
        .visible("C", {"p1"}, {"p2"})
        .initial({"p0"})
        .final({"p2"})
        .build();
}

PetriNet interplay_m2() {
    return NetBuilder()
        .visible("K", {"q0"}, {"q1"})
        .visible("L", {"q1"}, {"q2"})
        .initial({"q0"})
        .final({"q0"})
        .final({"q2"})
        .build();
}

ProcessFrame interplay_frame() {
    ProcessFrame f;
    f.add(Specification::net("m1", interplay_m1()));
    f.add(Specification::net("m2", interplay_m2()));
    f.add(Specification::declare("bk", {Constraint(TemplateKind::Response, {"B", "K"})}));
    return f;
}

Specification explicit_bk_spec() {
    PetriNet net = NetBuilder()
                       .visible("B", {"r0"}, {"r1"})
                       .visible("K", {"r1"}, {"r2"})
                       .visible("K", {"r0"}, {"r2"})
                       .initial({"r0"})
                       .final({"r0"})
                       .final({"r2"})
                       .build();
    return Specification::net("bk_explicit", std::move(net));
}

// After A the iteration may end at once, continue with B, or jump to E. After B the run
// may skip C, D and E but F stays mandatory. Open choice: the early end is a silent
// transition back to s rather than a second final place.
PetriNet optional_overlap_net() {
    return NetBuilder()
        .visible("A", {"s"}, {"p1"})
        .visible("B", {"p1"}, {"p2"})
        .visible("C", {"p2"}, {"p3"})
        .visible("D", {"p3"}, {"p4"})
        .visible("E", {"p4"}, {"p5"})
        .visible("F", {"p5"}, {"s"})
        .silent({"p1"}, {"s"})
        .silent({"p2"}, {"p5"})
        .silent({"p1"}, {"p4"})
        .initial({"s"})
        .final({"s"})
        .build();
}

// Same layout with every silent transition reversed, so D, E and F can return to an
// earlier point. Open choice: the reversed early-end transition leaves s towards p1, so
// a later iteration may re-enter at B without repeating A.
PetriNet repeatable_overlap_net() {
    return NetBuilder()
        .visible("A", {"s"}, {"p1"})
        .visible("B", {"p1"}, {"p2"})
        .visible("C", {"p2"}, {"p3"})
        .visible("D", {"p3"}, {"p4"})
        .visible("E", {"p4"}, {"p5"})
        .visible("F", {"p5"}, {"s"})
        .silent({"s"}, {"p1"})
        .silent({"p5"}, {"p2"})
        .silent({"p4"}, {"p1"})
        .initial({"s"})
        .final({"s"})
        .build();
}

// A opens three branches. B1, B2 merges into the middle of D1, D2; C1, C2, C3 runs
// freely; E joins. Open choice: E joins exactly the D and C branch ends.
PetriNet parallel_overlap_net() {
    return NetBuilder()
        .visible("A", {"s"}, {"pb", "pc", "pd"})
        .visible("B1", {"pb"}, {"pb1"})
        .visible("B2", {"pb1"}, {"pb2"})
        .visible("C1", {"pc"}, {"pc1"})
        .visible("C2", {"pc1"}, {"pc2"})
        .visible("C3", {"pc2"}, {"pc3"})
        .visible("D1", {"pd"}, {"pd1"})
        .visible("D2", {"pd1", "pb2"}, {"pd2"})
        .visible("E", {"pd2", "pc3"}, {"s"})
        .initial({"s"})
        .final({"s"})
        .build();
}

// The parallel layout with choices instead of splits and joins, and E split into E1 or
// E2. B1 commits to B2 then D2; C1 continues with D1 (towards D2) or with C2, C3.
// Open choice: D1 follows C1 rather than A, which is the only reading under which D1
// and C2 form an alternative to D2. Under either reading the mined automaton also accepts
// <A>: with E split into E1 | E2 no activity lies on every path from A back to s, so no
// template can demand that an iteration finishes.
PetriNet xor_overlap_net() {
    return NetBuilder()
        .visible("A", {"s"}, {"a"})
        .visible("B1", {"a"}, {"b1"})
        .visible("B2", {"b1"}, {"m"})
        .visible("C1", {"a"}, {"c1"})
        .visible("D1", {"c1"}, {"m"})
        .visible("C2", {"c1"}, {"c2"})
        .visible("C3", {"c2"}, {"j"})
        .visible("D2", {"m"}, {"j"})
        .visible("E1", {"j"}, {"s"})
        .visible("E2", {"j"}, {"s"})
        .initial({"s"})
        .final({"s"})
        .build();
}

std::vector<NamedNet> non_block_nets() {
    return {{"optional-overlap", optional_overlap_net()},
            {"repeatable-overlap", repeatable_overlap_net()},
            {"parallel-overlap", parallel_overlap_net()},
            {"xor-overlap", xor_overlap_net()}};
}

std::vector<std::pair<std::string, ProcessFrame>> frames() {
    using K = TemplateKind;
    std::vector<std::pair<std::string, ProcessFrame>> out;
    out.emplace_back("interplay", interplay_frame());

    ProcessFrame with_bk = interplay_frame();
    with_bk.add(explicit_bk_spec());
    out.emplace_back("interplay+bk", with_bk);

    out.emplace_back("declarative",
                     ProcessFrame({Specification::declare("d1",
                                                          {Constraint(K::Response, {"A", "B"}),
                                                           Constraint(K::NotChainSuccession, {"B", "C"}),
                                                           Constraint(K::NotChainSuccession, {"A", "A"})},
                                                          ActivitySet{"A", "B", "C"}),
                                   Specification::declare("d2", {Constraint(K::Precedence, {"C", "D"}),
                                                                 Constraint(K::AlternateSuccession, {"D", "E"})}),
                                   Specification::declare("d3", {Constraint(K::Interposition, {"A", "E", "D"}),
                                                                 Constraint(ConstraintTemplate{K::Absence, 3}, {"B"})})}));

    out.emplace_back("mixed",
                     ProcessFrame({Specification::net("seq", variant_net(Construct::Sequence, Variant::Optional)),
                                   Specification::declare("extra", {Constraint(K::Response, {"B", "E"}),
                                                                    Constraint(K::NotCoExistence, {"C", "F"}),
                                                                    Constraint(K::CoExistence, {"E", "G"})},
                                                          ActivitySet{"B", "C", "E", "F", "G"})}));

    // Raw automaton: at most two X between consecutive Y, over {X, Y}.
    const Dfa at_most_two({"X", "Y"}, 4, 0, {true, true, true, false},
                          {1, 0, 0, 2, 0, 1, 3, 0, 2, 3, 3, 3});
    out.emplace_back("raw",
                     ProcessFrame({Specification::raw("xy", at_most_two),
                                   Specification::net("par", variant_net(Construct::Parallel, Variant::OptionalRepeatable)),
                                   Specification::declare("be", {Constraint(K::BalancedEnablement, {"X", "B1", "Y"}),
                                                                 Constraint(K::Succession, {"A", "X"})})}));
    return out;
}

std::vector<procframe::Constraint> template_catalog() {
    using procframe::Constraint;
    using K = procframe::TemplateKind;
    return {
        Constraint({K::Existence, 2}, {"A"}),
        Constraint({K::Absence, 3}, {"A"}),
        Constraint({K::Exactly, 2}, {"A"}),
        Constraint(K::Init, {"A"}),
        Constraint(K::Response, {"A", "B"}),
        Constraint(K::Precedence, {"A", "B"}),
        Constraint(K::Succession, {"A", "B"}),
        Constraint(K::AlternateResponse, {"A", "B"}),
        Constraint(K::AlternatePrecedence, {"A", "B"}),
        Constraint(K::AlternateSuccession, {"A", "B"}),
        Constraint(K::CoExistence, {"A", "B"}),
        Constraint(K::NotCoExistence, {"A", "B"}),
        Constraint(K::NotSuccession, {"A", "B"}),
        Constraint(K::NotChainSuccession, {"A", "B"}),
        Constraint(K::Interposition, {"A", "B", "C"}),
        Constraint(K::BalancedEnablement, {"A", "B", "C"}),
    };
}

}  // namespace fixtures
