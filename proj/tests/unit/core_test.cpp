#include <gtest/gtest.h>

#include <procframe/core.hpp>
#include <procframe/error.hpp>

#include "oracles.hpp"

namespace {

using namespace procframe;

TEST(Project, KeepsOnlyListedActivities) {
    EXPECT_EQ(project({"a", "b", "c"}, {"a", "c"}), (Trace{"a", "c"}));
    EXPECT_EQ(project({}, {"a"}), Trace{});
    EXPECT_EQ(project({"b", "b", "b"}, {"a"}), Trace{});
}

TEST(Project, IdempotentIdentityAndShrinking) {
    const std::vector<Activity> symbols{"a", "b", "c"};
    const std::vector<ActivitySet> alphabets{{}, {"a"}, {"a", "c"}, {"a", "b", "c"}};
    for (const auto& t : oracles::all_traces(symbols, 5)) {
        for (const auto& sigma : alphabets) {
            const Trace p = project(t, sigma);
            EXPECT_EQ(project(p, sigma), p);
            EXPECT_LE(p.size(), t.size());
        }
        EXPECT_EQ(project(t, {"a", "b", "c"}), t);
    }
}

TEST(EventLog, AlphabetIsUnionOfEvents) {
    EXPECT_EQ(log_alphabet(EventLog({{"a", "b"}, {"b", "c"}})), (ActivitySet{"a", "b", "c"}));
    EXPECT_TRUE(log_alphabet(EventLog({{}})).empty());
    EXPECT_EQ(log_alphabet(EventLog({{"a", "a"}})), ActivitySet{"a"});
    EXPECT_EQ(EventLog({{"x"}, {"y", "x"}}).alphabet(), (ActivitySet{"x", "y"}));
    EXPECT_EQ(EventLog({{"a", "b"}}).traces(), std::vector<Trace>{(Trace{"a", "b"})});
    EXPECT_EQ(EventLog({{}}).size(), 1u);
}

TEST(EventLog, KeepsOrderAndMultiplicity) {
    const EventLog log({{"b"}, {"a"}, {"b"}});
    ASSERT_EQ(log.size(), 3u);
    EXPECT_EQ(log.traces()[0], Trace{"b"});
    EXPECT_EQ(log.traces()[2], Trace{"b"});
}

TEST(PrependStart, AddsOneEventPerTrace) {
    const EventLog out = prepend_start(EventLog({{"a"}, {}}), "S");
    EXPECT_EQ(out.traces()[0], (Trace{"S", "a"}));
    EXPECT_EQ(out.traces()[1], Trace{"S"});
    EXPECT_EQ(out.alphabet().size(), 2u);
}

TEST(PrependStart, ClashIsRejected) {
    EXPECT_THROW(prepend_start(EventLog({{"S"}}), "S"), StartSymbolClash);
}

TEST(Activity, ReservedCharactersAreInvalid) {
    EXPECT_TRUE(is_valid_activity("Approve"));
    EXPECT_FALSE(is_valid_activity(""));
    EXPECT_FALSE(is_valid_activity("a,b"));
    EXPECT_FALSE(is_valid_activity("a;b"));
    EXPECT_FALSE(is_valid_activity("a\nb"));
    EXPECT_THROW(require_valid_activity("x,y"), InvalidArgument);
}

TEST(SymbolTable, LexicographicIds) {
    const SymbolTable table({"c", "a", "b"});
    EXPECT_EQ(table.find("a"), SymbolId{0});
    EXPECT_EQ(table.find("c"), SymbolId{2});
    EXPECT_FALSE(table.find("z"));
    EXPECT_EQ(table.intern({"b", "a"}), (std::vector<SymbolId>{1, 0}));
    EXPECT_THROW(table.intern({"z"}), UnknownActivity);
}

TEST(FormatTrace, AngleBracketList) {
    EXPECT_EQ(format_trace({}), "<>");
    EXPECT_EQ(format_trace({"A", "B"}), "<A,B>");
}

}  // namespace
