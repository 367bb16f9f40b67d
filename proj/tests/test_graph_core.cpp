#include "ringel/cayley.hpp"
#include "ringel/group.hpp"
#include "ringel/target.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ringel;

namespace
{
    auto full_colors(int p) -> ColorSet
    {
        ColorSet s(p);
        for (int x = 1; 2 * x < p; ++x)
            s.add(x);
        return s;
    }
}

TEST(Group, RejectsNonPrimeModulus)
{
    EXPECT_THROW(CyclicGroup(12), Error);
    EXPECT_THROW(CyclicGroup(1), Error);
    EXPECT_NO_THROW(CyclicGroup(13));
    try {
        CyclicGroup g(15);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
}

TEST(Group, ProductAdditionIsComponentwise)
{
    ProductGroup g(11, 3);
    auto s = g.add({10, 2}, {3, 2});
    EXPECT_EQ(s.x, 2);
    EXPECT_EQ(s.layer, 1);
    EXPECT_EQ(g.elements().size(), 33U);
}

TEST(ColorSet, RejectsSymmetricPair)
{
    ColorSet s(11);
    s.add(3);
    try {
        s.add(8);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::SymmetricColors);
    }
    EXPECT_THROW(s.add(3), Error);
    EXPECT_THROW(s.add(0), Error);
    EXPECT_THROW(s.add(11), Error);
}

TEST(ColorSet, AntisymmetryForAllSubsets)
{
    for (int p : {5, 7, 11}) {
        for (int mask = 0; mask < (1 << (p - 1)); ++mask) {
            std::vector<int> elements;
            for (int s = 1; s < p; ++s)
                if (mask & (1 << (s - 1)))
                    elements.push_back(s);
            bool symmetric = false;
            for (auto s : elements)
                for (auto t : elements)
                    symmetric = symmetric || s + t == p;
            if (symmetric)
                EXPECT_THROW(ColorSet(p, elements), Error);
            else
                EXPECT_LE(ColorSet(p, elements).size(), static_cast<std::size_t>((p - 1) / 2));
        }
    }
}

TEST(Cayley, FullColorSetGivesCompleteGraph)
{
    auto x = build_cayley(CyclicGroup(13), full_colors(13));
    EXPECT_EQ(x.arcs().size(), 78U);
    auto edges = x.underlying_edges();
    EXPECT_EQ(edges.size(), 78U);
    std::set<std::pair<int, int>> unique(edges.begin(), edges.end());
    EXPECT_EQ(unique.size(), 78U);
    for (int v = 0; v < 13; ++v)
        EXPECT_EQ(x.out_degree(v), 6U);
}

TEST(Cayley, EmptyColorSetHasNoArcs)
{
    EXPECT_TRUE(build_cayley(CyclicGroup(11), ColorSet(11)).arcs().empty());
}

TEST(Cayley, LiftedColorsGiveBlowup)
{
    auto x = build_cayley(ProductGroup(11, 2), ColorSet(11, {1, 3, 4, 5, 9}));
    EXPECT_EQ(x.arcs().size(), 220U);
    auto edges = x.underlying_edges();
    std::set<std::pair<ProductVertex, ProductVertex>> unique(edges.begin(), edges.end());
    EXPECT_EQ(unique.size(), 220U);
    for (const auto & [u, v] : unique)
        EXPECT_NE(u.x, v.x);
}

TEST(BlowUpArc, Counts)
{
    auto one = blow_up_arc({0, 6}, 1);
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0].tail, (ProductVertex{0, 0}));
    EXPECT_EQ(one[0].head, (ProductVertex{6, 0}));
    EXPECT_EQ(blow_up_arc({0, 6}, 2).size(), 4U);
    auto nine = blow_up_arc({3, 10}, 3);
    EXPECT_EQ(std::set<Arc<ProductVertex>>(nine.begin(), nine.end()).size(), 9U);
    EXPECT_THROW(blow_up_arc({4, 4}, 2), Error);
}

TEST(Translate, ShiftsAndPreservesColors)
{
    CyclicGroup g(13);
    std::vector<Arc<int>> a{{0, 6}};
    EXPECT_EQ(translate(g, a, 0), a);
    EXPECT_EQ(translate(g, a, 1), (std::vector<Arc<int>>{{1, 7}}));
    for (int t = 0; t < 13; ++t)
        EXPECT_EQ(color_of(g, translate(g, a, t)[0]), 6);
}

TEST(Translate, RainbowTranslatesAreDisjoint)
{
    CyclicGroup g(13);
    // A rainbow path 0 -> 1 -> 4 -> 9 (colors 1, 3, 5).
    std::vector<Arc<int>> a{{0, 1}, {1, 4}, {4, 9}};
    ASSERT_TRUE(is_rainbow(g, a));
    std::set<Arc<int>> all;
    for (int t = 0; t < 13; ++t)
        for (const auto & arc : translate(g, a, t))
            EXPECT_TRUE(all.insert(arc).second);
    EXPECT_EQ(all.size(), 39U);
}

TEST(Target, EdgeCountsMatchClosedForms)
{
    for (int p : {3, 5, 7, 11, 13})
        for (int r : {1, 2, 3}) {
            auto g = build_target(TargetKind::BlowupComplete, p, r);
            EXPECT_EQ(static_cast<long>(g.edges.size()), expected_edge_count(TargetKind::BlowupComplete, p, r));
        }
    for (int p : {5, 7, 11, 13}) {
        auto g = build_target(TargetKind::NearComplete, p, 3);
        EXPECT_EQ(static_cast<long>(g.edges.size()), 9L * p * (p + 1) / 2);
        EXPECT_EQ(g.vertices.size(), static_cast<std::size_t>(3 * p + 2));
        EXPECT_FALSE(g.contains(make_edge(Vertex::apex(0), Vertex::apex(1))));
        auto m = build_target(TargetKind::MatchingComplement, p, 2);
        EXPECT_EQ(static_cast<long>(m.edges.size()), expected_edge_count(TargetKind::MatchingComplement, p, 2));
        EXPECT_FALSE(m.contains(make_edge(Vertex::plain(4), Vertex::plain(5))));
    }
    auto k = build_target(TargetKind::CliqueComplement, 11, 5);
    EXPECT_EQ(k.vertices.size(), 58U);
    EXPECT_EQ(k.edges.size(), 1650U);
}

TEST(Target, SmallCases)
{
    auto b = build_target(TargetKind::BlowupComplete, 11, 2);
    EXPECT_EQ(b.vertices.size(), 22U);
    EXPECT_EQ(b.edges.size(), 220U);
    EXPECT_EQ(build_target(TargetKind::BlowupComplete, 3, 1).edges.size(), 3U);
    EXPECT_EQ(build_target(TargetKind::NearComplete, 11, 3).edges.size(), 594U);
}

TEST(Target, RejectsUnsupportedParameters)
{
    EXPECT_THROW(build_target(TargetKind::NearComplete, 11, 5), Error);
    EXPECT_THROW(build_target(TargetKind::CliqueComplement, 11, 4), Error);
    EXPECT_THROW(build_target(TargetKind::MatchingComplement, 11, 3), Error);
    EXPECT_THROW(build_target(TargetKind::BlowupComplete, 12, 2), Error);
}

TEST(Target, KindNamesRoundTrip)
{
    for (auto kind : {TargetKind::BlowupComplete, TargetKind::MatchingComplement, TargetKind::NearComplete,
             TargetKind::CliqueComplement})
        EXPECT_EQ(parse_target_kind(to_string(kind)), kind);
    EXPECT_FALSE(parse_target_kind("nope").has_value());
}
