#include "tropadel/polytope.hpp"

#include "tropadel/fan.hpp"

#include <gtest/gtest.h>

using namespace tropadel;

namespace {

QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

Polytope unit_square()
{
    return Polytope::from_points(2, {qv({0, 0}), qv({1, 0}), qv({0, 1}), qv({1, 1})});
}

TEST(Polytope, FromPointsPrunesInterior)
{
    Polytope p = Polytope::from_points(2, {qv({0, 0}), qv({2, 0}), qv({0, 2}), qv({2, 2}), qv({1, 1})});
    EXPECT_EQ(p.vertices().size(), 4u);
}

TEST(Polytope, FromPointsPrunesEdgeMidpoints3D)
{
    std::vector<QVec> pts = {qv({0, 0, 0}), qv({2, 0, 0}), qv({0, 2, 0}), qv({0, 0, 2}),
                             qv({1, 0, 0}), qv({1, 1, 0})};
    Polytope p = Polytope::from_points(3, pts);
    EXPECT_EQ(p.vertices().size(), 4u);
    EXPECT_EQ(p.volume(), Rat(8, 6));
}

TEST(Polytope, VolumeExamples)
{
    EXPECT_EQ(unit_square().volume(), Rat(1));
    Polytope simplex2 = Polytope::from_points(2, {qv({0, 0}), qv({1, 0}), qv({0, 1})});
    EXPECT_EQ(simplex2.volume(), Rat(1, 2));
    Polytope simplex3 = Polytope::from_points(3, {qv({0, 0, 0}), qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1})});
    EXPECT_EQ(simplex3.volume(), Rat(1, 6));
    Polytope cube = Polytope::from_points(
        3, {qv({0, 0, 0}), qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1}), qv({1, 1, 0}), qv({1, 0, 1}),
            qv({0, 1, 1}), qv({1, 1, 1})});
    EXPECT_EQ(cube.volume(), Rat(1));
    // lower-dimensional: zero volume
    Polytope seg = Polytope::from_points(2, {qv({0, 0}), qv({3, 0})});
    EXPECT_EQ(seg.volume(), Rat(0));
    Polytope pt = Polytope::from_points(2, {qv({5, 7})});
    EXPECT_EQ(pt.volume(), Rat(0));
}

TEST(Polytope, HalfSpacesSegment)
{
    // { m : m >= -1, -m >= 0 } = [-1, 0]
    Polytope p = Polytope::from_half_spaces(1, {qv({1}), qv({-1})}, {Rat(1), Rat(0)});
    ASSERT_EQ(p.vertices().size(), 2u);
    EXPECT_EQ(p.vertices()[0], qv({-1}));
    EXPECT_EQ(p.vertices()[1], qv({0}));
}

TEST(Polytope, HalfSpacesTriangle)
{
    // P of the divisor D_{rho1} on P^2: {m1 >= -1, m2 >= 0, -m1-m2 >= 0}
    Polytope p = Polytope::from_half_spaces(2, {qv({1, 0}), qv({0, 1}), qv({-1, -1})},
                                            {Rat(1), Rat(0), Rat(0)});
    ASSERT_EQ(p.vertices().size(), 3u);
    EXPECT_EQ(p.volume(), Rat(1, 2));
    std::vector<QVec> expect = {qv({-1, 0}), qv({-1, 1}), qv({0, 0})};
    EXPECT_EQ(p.vertices(), expect);
}

TEST(Polytope, HalfSpacesEmptyAndPoint)
{
    Polytope e = Polytope::from_half_spaces(1, {qv({1}), qv({-1})}, {Rat(-2), Rat(0)});
    EXPECT_TRUE(e.is_empty());
    Polytope z = Polytope::from_half_spaces(2, {qv({1, 0}), qv({-1, 0}), qv({0, 1}), qv({0, -1})},
                                            {Rat(0), Rat(0), Rat(0), Rat(0)});
    ASSERT_EQ(z.vertices().size(), 1u);
    EXPECT_EQ(z.vertices()[0], qv({0, 0}));
}

TEST(MixedVolume, DiagonalIsVolume)
{
    Polytope s = unit_square();
    EXPECT_EQ(mixed_volume({s, s}), Rat(1));
}

TEST(MixedVolume, SquareAndSegment)
{
    Polytope s = unit_square();
    Polytope seg = Polytope::from_points(2, {qv({0, 0}), qv({1, 0})});
    // derived: area(P + t Q) = 1 + t, so 2 MV = 1
    EXPECT_EQ(mixed_volume({s, seg}), Rat(1, 2));
}

TEST(MixedVolume, PointGivesZero)
{
    Polytope s = unit_square();
    Polytope pt = Polytope::from_points(2, {qv({3, 4})});
    EXPECT_EQ(mixed_volume({s, pt}), Rat(0));
}

TEST(MixedVolume, SymmetricAndMultilinear)
{
    auto rand_poly = [&](int s) {
        std::vector<QVec> pts;
        const int npts = 3 + static_cast<int>(splitmix64(s) % 4);
        for (int i = 0; i < npts; ++i) {
            pts.push_back({Rat(ranged_int(splitmix64(s * 101 + 2 * i), -4, 4)),
                           Rat(ranged_int(splitmix64(s * 101 + 2 * i + 1), -4, 4))});
        }
        return Polytope::from_points(2, pts);
    };
    for (int s = 0; s < 25; ++s) {
        Polytope a = rand_poly(3 * s), b = rand_poly(3 * s + 1), c = rand_poly(3 * s + 2);
        if (a.is_empty() || b.is_empty() || c.is_empty()) continue;
        EXPECT_EQ(mixed_volume({a, b}), mixed_volume({b, a}));
        // Minkowski multilinearity: MV(a + b, c) = MV(a, c) + MV(b, c)
        EXPECT_EQ(mixed_volume({minkowski_sum(a, b), c}), mixed_volume({a, c}) + mixed_volume({b, c}));
    }
}

TEST(MixedVolume, SymmetricAndMultilinear3D)
{
    auto rand_poly = [&](int s) {
        std::vector<QVec> pts;
        for (int i = 0; i < 5; ++i) {
            pts.push_back({Rat(ranged_int(splitmix64(s * 211 + 3 * i), -3, 3)),
                           Rat(ranged_int(splitmix64(s * 211 + 3 * i + 1), -3, 3)),
                           Rat(ranged_int(splitmix64(s * 211 + 3 * i + 2), -3, 3))});
        }
        return Polytope::from_points(3, pts);
    };
    for (int s = 0; s < 8; ++s) {
        Polytope a = rand_poly(4 * s), b = rand_poly(4 * s + 1), c = rand_poly(4 * s + 2),
                 d = rand_poly(4 * s + 3);
        EXPECT_EQ(mixed_volume({a, b, c}), mixed_volume({c, a, b}));
        EXPECT_EQ(mixed_volume({minkowski_sum(a, d), b, c}),
                  mixed_volume({a, b, c}) + mixed_volume({d, b, c}));
    }
}

TEST(MixedVolume, AgainstBruteForcePolynomialExpansion)
{
    // vol(aP + bQ) = a^2 vol(P) + 2ab MV(P,Q) + b^2 vol(Q): read off MV by
    // evaluating at integer dilations (independent quadrature-style oracle).
    Polytope p = Polytope::from_points(2, {qv({0, 0}), qv({2, 1}), qv({1, 3}), qv({-1, 1})});
    Polytope q = Polytope::from_points(2, {qv({0, 0}), qv({1, 0}), qv({0, 2}), qv({1, 2})});
    auto dilate = [](const Polytope& r, long k) {
        std::vector<QVec> pts;
        for (const auto& v : r.vertices()) pts.push_back(Rat(k) * v);
        return Polytope::from_points(2, pts);
    };
    const Rat v11 = minkowski_sum(p, q).volume();
    const Rat v12 = minkowski_sum(p, dilate(q, 2)).volume();
    // v11 = vol(P) + 2 MV + vol(Q); v12 = vol(P) + 4 MV + 4 vol(Q)
    const Rat mv_from_expansion = (v12 - v11 - 3 * q.volume()) / 2;
    EXPECT_EQ(mixed_volume({p, q}), mv_from_expansion);
}

}  // namespace
