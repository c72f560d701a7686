#include "tropadel/cone.hpp"

#include <gtest/gtest.h>

using namespace tropadel;

namespace {

QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

TEST(DoubleDescription, Quadrant)
{
    // {x >= 0, y >= 0}
    const auto c = cone_from_inequalities(2, {qv({1, 0}), qv({0, 1})});
    EXPECT_TRUE(c.lineality.empty());
    ASSERT_EQ(c.rays.size(), 2u);
    EXPECT_EQ(c.rays[0], qv({0, 1}));
    EXPECT_EQ(c.rays[1], qv({1, 0}));
}

TEST(DoubleDescription, Halfspace)
{
    const auto c = cone_from_inequalities(2, {qv({1, 0})});
    ASSERT_EQ(c.lineality.size(), 1u);
    EXPECT_EQ(primitive(c.lineality[0]), qv({0, 1}));
    ASSERT_EQ(c.rays.size(), 1u);
    EXPECT_EQ(c.rays[0], qv({1, 0}));
}

TEST(DoubleDescription, HyperplaneOnly)
{
    const auto c = cone_from_inequalities(2, {}, {qv({1, 1})});
    EXPECT_TRUE(c.rays.empty());
    ASSERT_EQ(c.lineality.size(), 1u);
    EXPECT_EQ(dot(c.lineality[0], qv({1, 1})), Rat(0));
}

TEST(DoubleDescription, SquareCone3D)
{
    // Cone over the unit square at height 1: facets x3 >= x1, x3 >= -x1, etc.
    const auto c = cone_from_inequalities(
        3, {qv({1, 0, 1}), qv({-1, 0, 1}), qv({0, 1, 1}), qv({0, -1, 1})});
    EXPECT_TRUE(c.lineality.empty());
    ASSERT_EQ(c.rays.size(), 4u);
}

TEST(DoubleDescription, EmptyConeFromOpposedHalfspaces)
{
    const auto c = cone_from_inequalities(2, {qv({1, 0}), qv({-1, 0}), qv({0, 1}), qv({0, -1})});
    EXPECT_TRUE(c.rays.empty());
    EXPECT_TRUE(c.lineality.empty());
}

TEST(Cone, FromRaysCanonicalizes)
{
    // (1,1) is interior to the quadrant; it must be dropped.
    Cone c = Cone::from_rays(2, {qv({1, 0}), qv({1, 1}), qv({0, 1})});
    ASSERT_EQ(c.rays().size(), 2u);
    EXPECT_TRUE(c.is_simplicial());
}

TEST(Cone, RejectsLine)
{
    EXPECT_THROW(Cone::from_rays(2, {qv({1, 0}), qv({-1, 0})}), Error);
}

TEST(Cone, Membership)
{
    Cone quad = Cone::from_rays(2, {qv({1, 0}), qv({0, 1})});
    EXPECT_TRUE(quad.contains(qv({2, 3})));
    EXPECT_FALSE(quad.contains(qv({-1, 0})));
    EXPECT_TRUE(quad.contains(qv({0, 0})));
    EXPECT_TRUE(quad.contains(qv({1, 0})));  // face point counts as contained

    Cone square = Cone::from_rays(3, {qv({1, 0, 1}), qv({-1, 0, 1}), qv({0, 1, 1}), qv({0, -1, 1})});
    EXPECT_FALSE(square.is_simplicial());
    EXPECT_TRUE(square.contains(qv({0, 0, 1})));
    EXPECT_TRUE(square.contains(qv({1, 0, 1})));
    EXPECT_FALSE(square.contains(qv({2, 0, 1})));
    EXPECT_FALSE(square.contains(qv({0, 0, -1})));
}

TEST(Cone, FacetsOfQuadrant)
{
    Cone quad = Cone::from_rays(2, {qv({1, 0}), qv({0, 1})});
    const auto fs = quad.facets();
    ASSERT_EQ(fs.size(), 2u);
    for (const auto& f : fs) EXPECT_EQ(f.rays.size(), 1u);
}

TEST(Cone, Intersection)
{
    Cone a = Cone::from_rays(2, {qv({1, 0}), qv({0, 1})});
    Cone b = Cone::from_rays(2, {qv({1, 1}), qv({-1, 1})});
    Cone i = a.intersect(b);
    ASSERT_EQ(i.rays().size(), 2u);
    EXPECT_TRUE(i.contains(qv({1, 2})));
    EXPECT_FALSE(i.contains(qv({2, 1})));
    // extreme rays should be (0,1) and (1,1)
    EXPECT_TRUE(i.contains(qv({0, 1})));
    EXPECT_TRUE(i.contains(qv({1, 1})));
}

TEST(Cone, HalfspaceSplit)
{
    Cone quad = Cone::from_rays(2, {qv({1, 0}), qv({0, 1})});
    Cone upper = quad.intersect_halfspace(qv({-1, 1}));  // y >= x
    ASSERT_EQ(upper.rays().size(), 2u);
    EXPECT_TRUE(upper.contains(qv({1, 2})));
    EXPECT_FALSE(upper.contains(qv({2, 1})));
}

TEST(Cone, TriangulationOfSquareCone)
{
    Cone square = Cone::from_rays(3, {qv({1, 0, 1}), qv({-1, 0, 1}), qv({0, 1, 1}), qv({0, -1, 1})});
    const auto tri = square.triangulation();
    ASSERT_EQ(tri.size(), 2u);
    for (const auto& s : tri) EXPECT_EQ(s.size(), 3u);
}

}  // namespace
