#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <procframe/error.hpp>
#include <procframe/formats.hpp>

#include "fixtures.hpp"

namespace {

using namespace procframe;
using K = TemplateKind;
namespace fs = std::filesystem;

EventLog parse(const std::string& text, LogFormat f) {
    std::istringstream in(text);
    return parse_log(in, f, "test");
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("procframe_formats_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST(LinesLog, OneTracePerLine) {
    const EventLog log = parse("A,B\nA,C,B", LogFormat::Lines);
    EXPECT_EQ(log.traces(), (std::vector<Trace>{{"A", "B"}, {"A", "C", "B"}}));
    EXPECT_EQ(parse("A\n\nB\n", LogFormat::Lines).traces(), (std::vector<Trace>{{"A"}, {}, {"B"}}));
}

TEST(CsvLog, GroupsInterleavedCases) {
    const EventLog log = parse("case_id,activity\nc1,A\nc2,X\nc1,B\nc2,Y\nc1,C\n", LogFormat::Csv);
    EXPECT_EQ(log.traces(), (std::vector<Trace>{{"A", "B", "C"}, {"X", "Y"}}));
    EXPECT_THROW(parse("foo,bar\n", LogFormat::Csv), ParseError);
    EXPECT_THROW(parse("case_id,activity\nc1\n", LogFormat::Csv), ParseError);
}

TEST(XesLog, ConceptNameOnly) {
    const std::string xes = R"(<?xml version="1.0"?>
<log>
  <trace><string key="concept:name" value="case1"/>
    <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00"/></event>
    <event><string key="org:resource" value="r"/><string key="concept:name" value="B"/></event>
  </trace>
  <trace></trace>
</log>)";
    EXPECT_EQ(parse(xes, LogFormat::Xes).traces(), (std::vector<Trace>{{"A", "B"}, {}}));
    const std::string missing = R"(<log><trace><event><string key="org:resource" value="r"/></event></trace></log>)";
    EXPECT_THROW(parse(missing, LogFormat::Xes), ParseError);
    EXPECT_THROW(parse("<log><trace>", LogFormat::Xes), ParseError);
}

TEST(Logs, RoundTripAllFormats) {
    const EventLog log({{"A", "B"}, {"C"}, {"A", "B"}});
    for (LogFormat f : {LogFormat::Lines, LogFormat::Csv, LogFormat::Xes}) {
        std::ostringstream out;
        write_log(out, log, f);
        EXPECT_EQ(parse(out.str(), f), log);
    }
    std::ostringstream csv;
    write_log(csv, EventLog({{"A"}, {}}), LogFormat::Csv);
    EXPECT_EQ(parse(csv.str(), LogFormat::Csv).size(), 1u);
}

TEST(Logs, FormatSelection) {
    EXPECT_EQ(log_format_for("x.xes"), LogFormat::Xes);
    EXPECT_EQ(log_format_for("x.CSV"), LogFormat::Csv);
    EXPECT_EQ(log_format_for("x.log"), LogFormat::Lines);
    EXPECT_EQ(log_format_from_name("xes"), LogFormat::Xes);
    EXPECT_FALSE(log_format_from_name("json"));
}

TEST(Declare, ParsesTemplates) {
    EXPECT_EQ(parse_constraint("Response[A,B]"), Constraint(K::Response, {"A", "B"}));
    EXPECT_EQ(parse_constraint(" Existence3[A] "), Constraint({K::Existence, 3}, {"A"}));
    EXPECT_EQ(parse_constraint("Existence[A]"), Constraint({K::Existence, 1}, {"A"}));
    EXPECT_EQ(parse_constraint("NotChainSuccession[A,A]"), Constraint(K::NotChainSuccession, {"A", "A"}));
    EXPECT_EQ(parse_constraint("BalancedEnablement[A,B,C]"), Constraint(K::BalancedEnablement, {"A", "B", "C"}));
    EXPECT_THROW(parse_constraint("Frobnicate[A]"), ParseError);
    EXPECT_THROW(parse_constraint("Response[A]"), ParseError);
    EXPECT_THROW(parse_constraint("Response A,B"), ParseError);
}

TEST(Declare, FileRoundTripSortsLines) {
    std::istringstream in("# comment\nResponse[B,A]\n\nInterposition[A,B,C]\nAbsence2[C]\n");
    const auto cs = parse_declare(in);
    ASSERT_EQ(cs.size(), 3u);
    const std::string text = format_declare(cs);
    std::istringstream again(text);
    const auto back = parse_declare(again);
    EXPECT_EQ(format_declare(back), text);
    EXPECT_EQ(std::set<Constraint>(back.begin(), back.end()), std::set<Constraint>(cs.begin(), cs.end()));
    EXPECT_EQ(text, "Absence2[C]\nInterposition[A,B,C]\nResponse[B,A]\n");
}

TEST(Declare, ErrorCarriesLine) {
    std::istringstream in("Response[A,B]\nBogus[A]\n");
    try {
        parse_declare(in, "x.decl");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Net, NativeRoundTripOnFixtures) {
    std::vector<PetriNet> nets{fixtures::interplay_m1(), fixtures::interplay_m2()};
    for (auto& n : fixtures::non_block_nets()) nets.push_back(n.net);
    for (auto [c, v] : fixtures::detectable_variants()) nets.push_back(fixtures::variant_net(c, v));
    for (const auto& net : nets) {
        const std::string text = format_net(net);
        std::istringstream in(text);
        const PetriNet back = parse_net(in);
        EXPECT_EQ(format_net(back), text);
        EXPECT_TRUE(equivalent(net_to_dfa(back), net_to_dfa(net)));
    }
}

TEST(Net, SilentTransitionsHaveNoLabel) {
    const std::string text = format_net(fixtures::variant_net(Construct::Sequence, Variant::Optional));
    EXPECT_NE(text.find("tau1 silent"), std::string::npos);
    EXPECT_EQ(text.find("tau1 label"), std::string::npos);
}

TEST(Net, ParseErrors) {
    std::istringstream dangling("places:\n  p\ntransitions:\n  t label=A\narcs:\n  p -> t\n  t -> q\ninitial:\n  p\nfinal:\n  p\n");
    EXPECT_THROW(parse_net(dangling), ParseError);
    std::istringstream no_final("places:\n  p\ntransitions:\n  t label=A\narcs:\n  p -> t\n  t -> p\ninitial:\n  p\n");
    EXPECT_THROW(parse_net(no_final), ParseError);
    std::istringstream two("places:\n  p\n  q\ntransitions:\n  t label=A\narcs:\n  p -> t\n  t -> q\ninitial:\n  p\nfinal:\n  q\n");
    const PetriNet net = parse_net(two);
    EXPECT_EQ(net.num_places(), 2u);
    EXPECT_EQ(net.num_transitions(), 1u);
}

TEST(Net, PnmlRoundTrip) {
    for (auto [c, v] : fixtures::detectable_variants()) {
        const PetriNet net = fixtures::variant_net(c, v);
        std::istringstream in(format_pnml(net));
        const PetriNet back = parse_pnml(in);
        EXPECT_EQ(back.labels(), net.labels());
        EXPECT_EQ(back.finals().size(), net.finals().size());
        EXPECT_TRUE(equivalent(net_to_dfa(back), net_to_dfa(net))) << fixtures::variant_label(c, v);
    }
    const PetriNet m2 = fixtures::interplay_m2();
    std::istringstream in(format_pnml(m2));
    EXPECT_EQ(parse_pnml(in).finals().size(), 2u);
}

TEST(Net, PnmlReadsPromFinalMarkings) {
    const std::string pnml = R"(<pnml><net id="n"><page id="pg">
  <place id="p0"><initialMarking><text>1</text></initialMarking></place>
  <place id="p1"/>
  <transition id="t"><name><text>A</text></name></transition>
  <transition id="s"><name><text>tau</text></name><toolspecific tool="ProM" version="6.4" activity="$invisible$"/></transition>
  <arc id="a1" source="p0" target="t"/><arc id="a2" source="t" target="p1"/>
  <arc id="a3" source="p1" target="s"/><arc id="a4" source="s" target="p0"/>
</page>
<finalmarkings><marking><place idref="p0"><text>1</text></place></marking></finalmarkings>
</net></pnml>)";
    std::istringstream in(pnml);
    const PetriNet net = parse_pnml(in);
    EXPECT_EQ(net.labels(), ActivitySet{"A"});
    EXPECT_TRUE(net.transition(*net.find_transition("s")).silent());
    EXPECT_TRUE(net_accepts(net, {"A", "A"}));
    EXPECT_FALSE(net_accepts(net, {"A", "B"}));
}

TEST(DfaText, RoundTrip) {
    const Dfa d = compile(Constraint(K::Interposition, {"A", "B", "C"}));
    std::istringstream in(format_dfa(d));
    EXPECT_EQ(parse_dfa(in), d);
    std::istringstream bad("symbols: A\nstates: 1\ninitial: 0\naccepting: 0\n0: 0\n");
    EXPECT_THROW(parse_dfa(bad), ParseError);
}

TEST_F(TempDir, FrameManifestRoundTrip) {
    for (const auto& [name, frame] : fixtures::frames()) {
        const fs::path manifest = dir_ / name / "frame.json";
        save_frame(manifest, frame);
        const ProcessFrame back = load_frame(manifest);
        ASSERT_EQ(back.size(), frame.size()) << name;
        for (std::size_t i = 0; i < frame.size(); ++i) {
            EXPECT_EQ(back.specs()[i].name(), frame.specs()[i].name());
            EXPECT_EQ(back.specs()[i].alphabet(), frame.specs()[i].alphabet());
        }
        EXPECT_TRUE(equivalent(global_dfa(back), global_dfa(frame))) << name;
    }
}

TEST_F(TempDir, ManifestErrors) {
    std::istringstream dup(R"({"specs":[{"name":"a","kind":"declare","path":"a.decl"},{"name":"a","kind":"net","path":"b.net"}]})");
    EXPECT_THROW(parse_manifest(dup), ParseError);
    std::istringstream kind(R"({"specs":[{"name":"a","kind":"toml","path":"a"}]})");
    EXPECT_THROW(parse_manifest(kind), ParseError);
    std::ofstream(dir_ / "frame.json") << R"({"specs":[{"name":"a","kind":"declare","path":"missing.decl"}]})";
    EXPECT_THROW(load_frame(dir_ / "frame.json"), Error);
}

TEST_F(TempDir, FilesByExtension) {
    write_net(dir_ / "n.pnml", fixtures::interplay_m1());
    write_net(dir_ / "n.net", fixtures::interplay_m1());
    EXPECT_NE(std::ifstream(dir_ / "n.pnml").peek(), 'p');  // XML, not the native sections
    EXPECT_TRUE(equivalent(net_to_dfa(read_net(dir_ / "n.pnml")), net_to_dfa(read_net(dir_ / "n.net"))));
    write_log(dir_ / "l.xes", EventLog({{"A"}}));
    EXPECT_EQ(read_log(dir_ / "l.xes").traces(), std::vector<Trace>{{"A"}});
}

TEST(Dot, FrameHasOneClusterPerSpec) {
    const std::string dot = frame_to_dot(fixtures::interplay_frame());
    std::size_t clusters = 0;
    for (std::size_t pos = 0; (pos = dot.find("subgraph \"cluster_", pos)) != std::string::npos; ++pos) ++clusters;
    EXPECT_EQ(clusters, 3u);
    EXPECT_EQ(dot, frame_to_dot(fixtures::interplay_frame()));
}

}  // namespace
