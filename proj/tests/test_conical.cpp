#include "tropadel/conical.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tropadel;

namespace {

QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

Fan p1_fan() { return Fan(1, {qv({1}), qv({-1})}, {{0}, {1}}, true); }

Fan p2_fan() { return Fan(2, {qv({1, 0}), qv({0, 1}), qv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}, true); }

Fan p1xp1_fan()
{
    return Fan(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0}), qv({0, -1})},
               {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, true);
}

// supporting function of [0] on P^1: value 1 on ray +1, 0 on ray -1
PLConical sf_zero_p1() { return PLConical(p1_fan(), {Rat(1), Rat(0)}); }
PLConical sf_infty_p1() { return PLConical(p1_fan(), {Rat(0), Rat(1)}); }

// Independent oracle for the supporting function of [0] on P^1: the
// one-parameter substitution s -> s^a pulls the divisor [0] back to
// ord_0(s^a) = max(a, 0) at 0; checked against eval.
long ord0_pullback_of_zero(long a) { return a > 0 ? a : 0; }

TEST(PLConical, EvalP1Examples)
{
    PLConical f = sf_zero_p1();
    EXPECT_EQ(f.eval(qv({1})), Rat(1));
    EXPECT_EQ(f.eval(qv({0})), Rat(0));
    EXPECT_EQ(f.eval(qv({-3})), Rat(0));
    for (long a = -6; a <= 6; ++a)
        EXPECT_EQ(f.eval(qv({a})), Rat(ord0_pullback_of_zero(a)));
}

TEST(PLConical, EvalOutsideSupportThrows)
{
    Fan a2(2, {qv({1, 0}), qv({0, 1})}, {{0, 1}}, false);
    PLConical f(a2, {Rat(1), Rat(2)});
    EXPECT_EQ(f.eval(qv({2, 3})), Rat(8));
    EXPECT_THROW(f.eval(qv({-1, 0})), Error);
}

TEST(PLConical, ConicalHomogeneitySpotCheck)
{
    PLConical f(p2_fan(), {Rat(2), Rat(-1), Rat(3, 2)});
    for (int s = 0; s < 200; ++s) {
        QVec a = {Rat(ranged_int(splitmix64(2 * s), -9, 9)), Rat(ranged_int(splitmix64(2 * s + 1), -9, 9))};
        const Rat lam(ranged_int(splitmix64(s + 99), 1, 12), ranged_int(splitmix64(s + 400), 1, 5));
        EXPECT_EQ(f.eval(lam * a), lam * f.eval(a));
    }
}

TEST(PLConical, MinOfZeroAndInftyIsZeroFunction)
{
    PLConical m = min(sf_zero_p1(), sf_infty_p1());
    EXPECT_TRUE(m.is_zero_function());
    for (long a = -4; a <= 4; ++a) EXPECT_EQ(m.eval(qv({a})), Rat(0));
}

TEST(PLConical, MinIdempotentAndAddInverse)
{
    PLConical f = sf_zero_p1();
    PLConical m = min(f, f);
    for (long a = -4; a <= 4; ++a) EXPECT_EQ(m.eval(qv({a})), f.eval(qv({a})));
    PLConical z = add(f, scale(f, Rat(-1)));
    EXPECT_TRUE(z.is_zero_function());
}

TEST(PLConical, AddAndMinPointwiseOnSamples)
{
    // two PL functions on different complete fans of the plane
    PLConical f(p2_fan(), {Rat(2), Rat(-1), Rat(1)});
    PLConical g(p1xp1_fan(), {Rat(1), Rat(1), Rat(3), Rat(0)});
    PLConical s = add(f, g);
    PLConical m = min(f, g);
    for (int i = 0; i < 1000; ++i) {
        QVec a = {Rat(ranged_int(splitmix64(2 * i), -12, 12), ranged_int(splitmix64(5 * i + 3), 1, 4)),
                  Rat(ranged_int(splitmix64(2 * i + 1), -12, 12), ranged_int(splitmix64(7 * i + 1), 1, 4))};
        EXPECT_EQ(s.eval(a), f.eval(a) + g.eval(a)) << i;
        EXPECT_EQ(m.eval(a), rat_min(f.eval(a), g.eval(a))) << i;
    }
}

TEST(PLConical, MinRefinementInsertsKernelRay)
{
    // f - g changes sign inside the first quadrant: f = x, g = y there.
    PLConical f(p1xp1_fan(), {Rat(1), Rat(0), Rat(0), Rat(0)});
    PLConical g(p1xp1_fan(), {Rat(0), Rat(1), Rat(0), Rat(0)});
    PLConical m = min(f, g);
    EXPECT_GE(m.fan().ray_index(qv({1, 1})), 0);  // kernel ray of f - g
    EXPECT_EQ(m.eval(qv({2, 1})), Rat(1));
    EXPECT_EQ(m.eval(qv({1, 2})), Rat(1));
}

TEST(SupRatio, SpecExamples)
{
    PLConical f = sf_zero_p1();
    PLConical g = add(sf_zero_p1(), sf_infty_p1());
    EXPECT_EQ(*sup_ratio(f, f).value, Rat(1));
    EXPECT_EQ(*sup_ratio(f, g).value, Rat(1));
    const auto inf = sup_ratio(sf_infty_p1(), sf_zero_p1());
    EXPECT_FALSE(inf.finite());
    EXPECT_EQ(inf.witness, qv({-1}));
}

TEST(SupRatio, ZeroIffZeroFunction)
{
    PLConical g = add(sf_zero_p1(), sf_infty_p1());  // > 0 off the origin
    PLConical z(p1_fan(), {Rat(0), Rat(0)});
    EXPECT_EQ(*sup_ratio(z, g).value, Rat(0));
    PLConical f = sf_zero_p1();
    EXPECT_GT(*sup_ratio(f, g).value, Rat(0));
}

TEST(SupRatio, NormAxiomsOnRandomTriples)
{
    Fan base = p2_fan();
    PLConical g(base, {Rat(1), Rat(1), Rat(1)});
    auto rand_fn = [&](int s) {
        std::vector<Rat> v;
        for (int i = 0; i < 3; ++i)
            v.push_back(Rat(ranged_int(splitmix64(s * 17 + i), -9, 9), ranged_int(splitmix64(s * 23 + i), 1, 4)));
        return PLConical(base, v);
    };
    for (int s = 0; s < 60; ++s) {
        PLConical a = rand_fn(3 * s), b = rand_fn(3 * s + 1);
        const Rat c(ranged_int(splitmix64(s + 1234), -7, 7), ranged_int(splitmix64(s + 777), 1, 5));
        const Rat na = *sup_ratio(a, g).value;
        const Rat nb = *sup_ratio(b, g).value;
        EXPECT_EQ(*sup_ratio(scale(a, c), g).value, rat_abs(c) * na);
        EXPECT_LE(*sup_ratio(add(a, b), g).value, na + nb);
    }
}

TEST(IsEffective, Examples)
{
    EXPECT_TRUE(sf_zero_p1().is_effective());
    EXPECT_TRUE(PLConical(p1_fan(), {Rat(0), Rat(0)}).is_effective());
    EXPECT_FALSE(PLConical(p1_fan(), {Rat(1), Rat(-1)}).is_effective());
}

TEST(Oracle, HomogeneityCheck)
{
    ConicalOracle euclid{[](const QVec& a) {
        double s = 0;
        for (const auto& x : a) {
            const double d = to_double(x);
            s += d * d;
        }
        return std::sqrt(s);
    }};
    EXPECT_TRUE(oracle_homogeneity_ok(euclid, 2));
    ConicalOracle square{[](const QVec& a) {
        double s = 0;
        for (const auto& x : a) s += to_double(x) * to_double(x);
        return s;
    }};
    EXPECT_FALSE(oracle_homogeneity_ok(square, 2));
}

TEST(Approximate, PLTargetReproducedExactly)
{
    // oracle = max(a1, a2, 0) is linear on each cone of its linearity fan
    Fan lin(2, {qv({1, 0}), qv({1, 1}), qv({0, 1}), qv({-1, 0}), qv({-1, -1}), qv({0, -1})},
            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}, true);
    ConicalOracle o{[](const QVec& a) { return std::max({to_double(a[0]), to_double(a[1]), 0.0}); }};
    const auto res = approximate(o, lin, 0, 2000);
    EXPECT_EQ(res.report.deviation_estimate, 0.0);
    EXPECT_EQ(res.fn.eval(qv({1, 0})), Rat(1));
    EXPECT_EQ(res.fn.eval(qv({-2, -7})), Rat(0));
    EXPECT_EQ(res.fn.eval(qv({3, 5})), Rat(5));
}

TEST(Approximate, EuclideanDeviationStrictlyDecreasing)
{
    ConicalOracle euclid{[](const QVec& a) {
        const double x = to_double(a[0]), y = to_double(a[1]);
        return std::hypot(x, y);
    }};
    Fan ref(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0}), qv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
            true);
    double prev = 1e300;
    for (int depth = 0; depth <= 6; ++depth) {
        const auto res = approximate(euclid, ref, depth, 10000);
        EXPECT_LT(res.report.deviation_estimate, prev) << "depth " << depth;
        prev = res.report.deviation_estimate;
    }
    EXPECT_LT(prev, 5e-3);
}

TEST(Approximate, MonotoneForSeveralSmoothOracles)
{
    Fan ref(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0}), qv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
            true);
    std::vector<ConicalOracle> oracles;
    oracles.push_back({[](const QVec& a) { return std::hypot(to_double(a[0]), to_double(a[1])); }});
    oracles.push_back({[](const QVec& a) {
        const double x = to_double(a[0]), y = to_double(a[1]);
        return std::sqrt(x * x + 2 * y * y);
    }});
    oracles.push_back({[](const QVec& a) {
        const double x = to_double(a[0]), y = to_double(a[1]);
        return std::sqrt(x * x + x * y + y * y);
    }});
    oracles.push_back({[](const QVec& a) {
        const double x = to_double(a[0]), y = to_double(a[1]);
        const double r = std::hypot(x, y);
        return r == 0 ? 0 : (x * x) / r;
    }});
    oracles.push_back({[](const QVec& a) {
        const double x = to_double(a[0]), y = to_double(a[1]);
        const double p = 4.0;
        return std::pow(std::pow(std::abs(x), p) + std::pow(std::abs(y), p), 1.0 / p);
    }});
    for (std::size_t k = 0; k < oracles.size(); ++k) {
        double prev = 1e300;
        for (int depth = 0; depth <= 4; ++depth) {
            const auto res = approximate(oracles[k], ref, depth, 4000);
            EXPECT_LE(res.report.deviation_estimate, prev) << "oracle " << k << " depth " << depth;
            prev = res.report.deviation_estimate;
        }
    }
}

TEST(Approximate, RejectsBadOracle)
{
    Fan ref(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0}), qv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
            true);
    ConicalOracle square{[](const QVec& a) {
        double s = 0;
        for (const auto& x : a) s += to_double(x) * to_double(x);
        return s;
    }};
    EXPECT_THROW(approximate(square, ref, 0), Error);
}

}  // namespace
