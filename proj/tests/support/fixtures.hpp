#pragma once

#include <string>
#include <vector>

#include <procframe/frame.hpp>
#include <procframe/petri.hpp>
#include <procframe/rigidity.hpp>

namespace fixtures {

using procframe::Construct;
using procframe::PetriNet;
using procframe::ProcessFrame;
using procframe::Variant;

/// Builder shorthand: places are created on first mention.
class NetBuilder {
public:
    NetBuilder& visible(const std::string& label, std::vector<std::string> in, std::vector<std::string> out);
    NetBuilder& silent(std::vector<std::string> in, std::vector<std::string> out);
    NetBuilder& initial(std::vector<std::string> places);
    NetBuilder& final(std::vector<std::string> places);
    PetriNet build() const;

private:
    procframe::PlaceId place(const std::string& id);
    std::vector<procframe::PlaceId> places(const std::vector<std::string>& ids);

    PetriNet net_;
    std::size_t silent_count_ = 0;
    std::vector<std::string> initial_;
    std::vector<std::vector<std::string>> finals_;
};

/// Reference net of one of the sixteen construct variants. Every variant sits in an outer
/// loop: place s is initial and final, A moves s to pa, the region runs from pa to pd and
/// D returns pd to s. Regions:
///   Sequence  B, C
///   Parallel  silent split; B1, B2 on one branch, C1, C2 on the other; silent join
///   Xor       B1, B2 or C1, C2
///   Or        silent splits for {B}, {C} and {B, C}; silent join on the done places
/// Optional adds a silent skip pa -> pd, repeatable a silent loop pd -> pa.
PetriNet variant_net(Construct construct, Variant variant);

std::string variant_label(Construct construct, Variant variant);

/// The fourteen variants that mining reproduces exactly.
std::vector<std::pair<Construct, Variant>> detectable_variants();

/// Mandatory sequence A, B, C, D in the outer loop.
PetriNet sequence4_net();
/// Mandatory parallelism with two branches of two activities.
PetriNet parallel2x2_net();

// Interplay frame. m1: A, then B or C. m2: optionally K then L. A response from B to K
// joins them. The net layout is reconstructed from the described behavior; only the
// quoted behavioral facts are checked.
PetriNet interplay_m1();
PetriNet interplay_m2();
ProcessFrame interplay_frame();
/// Explicit B-K relation over {B, K}: language {<>, <K>, <B,K>}.
procframe::Specification explicit_bk_spec();

// Non-block-structured nets. Reconstructed from their behavioral description; layout
// choices the description leaves open are noted in fixtures.cpp.
PetriNet optional_overlap_net();
PetriNet repeatable_overlap_net();
PetriNet parallel_overlap_net();
PetriNet xor_overlap_net();

struct NamedNet {
    std::string name;
    PetriNet net;
};
std::vector<NamedNet> non_block_nets();

/// One constraint per implemented template, over A, B and C.
std::vector<procframe::Constraint> template_catalog();

/// Five frames mixing declarative, net and raw specifications.
std::vector<std::pair<std::string, ProcessFrame>> frames();

}  // namespace fixtures
