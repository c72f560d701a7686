#include "tropadel/toric_divisor.hpp"

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

ToricModel p1_model() { return ToricModel(Fan(1, {qv({1}), qv({-1})}, {{0}, {1}}, true)); }

ToricModel p2_model()
{
    return ToricModel(Fan(2, {qv({1, 0}), qv({0, 1}), qv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}, true));
}

ToricModel p1xp1_model()
{
    return ToricModel(Fan(2, {qv({1, 0}), qv({0, 1}), qv({-1, 0}), qv({0, -1})},
                          {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, true));
}

// Brute-force vanishing order of the pull-back of D along the one-parameter
// subgroup s -> (s^{a_1}, ..., s^{a_n}) on P^2, via homogeneous coordinates:
// [1 : s^{a_1} : s^{a_2}] is rescaled so the minimal exponent is zero; the
// order along each coordinate hyperplane is the resulting exponent.
long p2_one_param_order(const std::vector<long>& coeffs, long a1, long a2)
{
    long e0 = 0, e1 = a1, e2 = a2;
    const long m = std::min({e0, e1, e2});
    e0 -= m;
    e1 -= m;
    e2 -= m;
    // ray order in the model: e1-ray, e2-ray, (-1,-1)-ray <-> X1, X2, X0
    return coeffs[0] * e1 + coeffs[1] * e2 + coeffs[2] * e0;
}

TEST(SupportingFunction, ZeroDivisorOnP1ViaOrdOracle)
{
    ToricDivisor d(p1_model(), {Rat(1), Rat(0)});  // [0]
    PLConical f = supporting_function(d);
    // independent route: ord_0 of s^a pulled back through lambda_a, order max(a,0)
    for (long a = -5; a <= 5; ++a) EXPECT_EQ(f.eval(qv({a})), Rat(std::max(a, 0L)));
}

TEST(SupportingFunction, ZeroDivisorGivesZeroFunction)
{
    ToricDivisor d(p2_model(), {Rat(0), Rat(0), Rat(0)});
    EXPECT_TRUE(supporting_function(d).is_zero_function());
}

TEST(SupportingFunction, PrimeDivisorOnP2ViaOrdOracle)
{
    ToricDivisor d(p2_model(), {Rat(1), Rat(0), Rat(0)});  // D_{rho_1}
    PLConical f = supporting_function(d);
    EXPECT_EQ(f.eval(qv({1, 0})), Rat(1));
    EXPECT_EQ(f.eval(qv({0, 1})), Rat(0));
    EXPECT_EQ(f.eval(qv({-1, -1})), Rat(0));
    for (long a1 = -4; a1 <= 4; ++a1)
        for (long a2 = -4; a2 <= 4; ++a2)
            EXPECT_EQ(f.eval(qv({a1, a2})), Rat(p2_one_param_order({1, 0, 0}, a1, a2)));
}

TEST(SupportingFunction, AdditiveOnRandomPairs)
{
    ToricModel m = p2_model();
    for (int s = 0; s < 100; ++s) {
        std::vector<Rat> c1, c2;
        for (int i = 0; i < 3; ++i) {
            c1.push_back(Rat(ranged_int(splitmix64(s * 13 + i), -9, 9)));
            c2.push_back(Rat(ranged_int(splitmix64(s * 17 + i), -9, 9)));
        }
        ToricDivisor d1(m, c1), d2(m, c2);
        PLConical lhs = supporting_function(d1 + d2);
        PLConical rhs = add(supporting_function(d1), supporting_function(d2));
        for (int t = 0; t < 10; ++t) {
            QVec a = {Rat(ranged_int(splitmix64(s * 1000 + 2 * t), -9, 9)),
                      Rat(ranged_int(splitmix64(s * 1000 + 2 * t + 1), -9, 9))};
            EXPECT_EQ(lhs.eval(a), rhs.eval(a));
        }
    }
}

TEST(SupportingFunction, EffectiveIffCoeffsNonnegative)
{
    ToricModel m = p2_model();
    for (int s = 0; s < 50; ++s) {
        std::vector<Rat> c;
        bool nonneg = true;
        for (int i = 0; i < 3; ++i) {
            c.push_back(Rat(ranged_int(splitmix64(s * 29 + i), -5, 5)));
            if (c.back() < 0) nonneg = false;
        }
        ToricDivisor d(m, c);
        EXPECT_EQ(supporting_function(d).is_effective(), nonneg);
    }
}

TEST(PullbackOneParam, SpecExamples)
{
    ToricDivisor zero_div(p1_model(), {Rat(1), Rat(0)});
    // lambda_2(s) = s^2: direct substitution gives order 2 at 0, 0 at infinity
    auto r = pullback_one_param(zero_div, qv({2}));
    EXPECT_EQ(r.at_zero, Rat(2));
    EXPECT_EQ(r.at_infinity, Rat(0));

    auto z = pullback_one_param(zero_div, qv({0}));
    EXPECT_EQ(z.at_zero, Rat(0));
    EXPECT_EQ(z.at_infinity, Rat(0));

    ToricDivisor both(p1_model(), {Rat(1), Rat(1)});  // [0] + [infinity]
    auto b = pullback_one_param(both, qv({1}));
    EXPECT_EQ(b.at_zero, Rat(1));
    EXPECT_EQ(b.at_infinity, Rat(1));
}

TEST(ArcOrder, AffineChartExample)
{
    // model A^2 inside P^2, f = SF of 2 D_1 + 3 D_2, arc orders (1,2):
    // substitute (s, u s^2) into x^2 y^3 and read the order by brute force.
    ToricModel m = p2_model();
    ToricDivisor d(m, {Rat(2), Rat(3), Rat(0)});
    PLConical f = supporting_function(d);
    MonomialArc arc(m, {0, 1}, {1, 2});
    long brute = 0;
    for (int rep = 0; rep < 2; ++rep) brute += 1;  // x^2 contributes ord(s^1) twice
    for (int rep = 0; rep < 3; ++rep) brute += 2;  // y^3 contributes ord(s^2) three times
    EXPECT_EQ(arc_order(f, arc), Rat(brute));
    EXPECT_EQ(arc_order(f, arc), Rat(8));
}

TEST(ArcOrder, ZeroFunction)
{
    ToricModel m = p2_model();
    PLConical z = supporting_function(ToricDivisor(m, {Rat(0), Rat(0), Rat(0)}));
    MonomialArc arc(m, {0, 1}, {3, 5});
    EXPECT_EQ(arc_order(z, arc), Rat(0));
}

TEST(ArcOrder, MatchesBruteForceSubstitutionOnRandomData)
{
    // The computable content of the toric/special comparison: orders of
    // pull-backs along monomial arcs agree with monomial substitution.
    std::vector<ToricModel> models = {p1_model(), p2_model(), p1xp1_model()};
    int trials = 0;
    for (int s = 0; trials < 100; ++s) {
        const auto& m = models[splitmix64(s) % models.size()];
        std::vector<Rat> coeffs;
        for (std::size_t i = 0; i < m.num_rays(); ++i)
            coeffs.push_back(Rat(ranged_int(splitmix64(s * 31 + i), -6, 6)));
        ToricDivisor d(m, coeffs);
        PLConical f = supporting_function(d);
        const std::size_t k = splitmix64(s + 7777) % m.fan().max_cones().size();
        const auto& cone = m.fan().max_cones()[k];
        std::vector<int> idx(cone.begin(), cone.end());
        std::vector<long> orders;
        for (std::size_t i = 0; i < idx.size(); ++i)
            orders.push_back(ranged_int(splitmix64(s * 97 + i), 0, 7));
        MonomialArc arc(m, idx, orders);
        // Brute force: local equation of D on the chart of this smooth cone is
        // prod x_rho^{a_rho}; substituting x_rho = s^{m_rho} accumulates the
        // exponent one factor at a time.
        long num = 0, den = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const long a = coeffs[idx[i]].convert_to<long>();
            for (long rep = 0; rep < std::abs(a); ++rep)
                (a > 0 ? num : den) += orders[i];
        }
        EXPECT_EQ(arc_order(f, arc), Rat(num - den)) << "trial " << trials;
        ++trials;
    }
}

TEST(ArcOrder, PLInterpolantNearSqrt2)
{
    ConicalOracle euclid{[](const QVec& a) {
        return std::hypot(to_double(a[0]), to_double(a[1]));
    }};
    ToricModel m = p1xp1_model();
    const auto res = approximate(euclid, m.fan(), 6, 10000);
    MonomialArc arc(m, {0, 1}, {1, 1});
    const double val = to_double(arc_order(res.fn, arc));
    // |f(x) - |x|| <= ||x||_1 * deviation on the cross-section
    EXPECT_NEAR(val, std::sqrt(2.0), 2.0 * res.report.deviation_estimate + 1e-12);
}

TEST(PullbackLinear, IdentityAndScaling)
{
    ToricModel m = p1_model();
    ToricDivisor d(m, {Rat(1), Rat(0)});
    QMat identity = {qv({1})};
    ToricDivisor same = pullback_linear(d, identity, m);
    EXPECT_EQ(same.coeffs(), d.coeffs());

    QMat twice = {qv({2})};
    ToricDivisor doubled = pullback_linear(d, twice, m);
    EXPECT_EQ(doubled.coeffs()[0], Rat(2));
    EXPECT_EQ(doubled.coeffs()[1], Rat(0));
}

TEST(PullbackLinear, RefinementKeepsFunction)
{
    ToricModel m = p1xp1_model();
    ToricDivisor d(m, {Rat(2), Rat(-1), Rat(3), Rat(5)});
    ToricModel fine(barycentric_subdivision(m.fan()));
    QMat identity = {qv({1, 0}), qv({0, 1})};
    ToricDivisor pulled = pullback_linear(d, identity, fine);
    PLConical f = supporting_function(d), g = supporting_function(pulled);
    for (int s = 0; s < 200; ++s) {
        QVec a = {Rat(ranged_int(splitmix64(2 * s), -9, 9)), Rat(ranged_int(splitmix64(2 * s + 1), -9, 9))};
        EXPECT_EQ(f.eval(a), g.eval(a));
    }
}

TEST(PullbackLinear, ContravariantComposition)
{
    ToricModel m = p1_model();
    for (int s = 0; s < 20; ++s) {
        ToricDivisor d(m, {Rat(ranged_int(splitmix64(s), -5, 5)), Rat(ranged_int(splitmix64(s + 50), -5, 5))});
        const long u = ranged_int(splitmix64(s + 100), 1, 4);
        const long v = ranged_int(splitmix64(s + 200), 1, 4);
        QMat phi = {qv({u})}, psi = {qv({v})}, comp = {qv({u * v})};
        ToricDivisor lhs = pullback_linear(d, comp, m);
        ToricDivisor rhs = pullback_linear(pullback_linear(d, phi, m), psi, m);
        EXPECT_EQ(lhs.coeffs(), rhs.coeffs());
    }
}

TEST(IsZeroByArcs, Examples)
{
    ToricModel m = p2_model();
    EXPECT_TRUE(is_zero_by_arcs(supporting_function(ToricDivisor(m, {Rat(0), Rat(0), Rat(0)}))));
    EXPECT_FALSE(is_zero_by_arcs(supporting_function(ToricDivisor(m, {Rat(1), Rat(0), Rat(0)}))));
    // all-zero ray values on a refined fan of P^2
    Fan fine = barycentric_subdivision(m.fan());
    PLConical z(fine, std::vector<Rat>(fine.rays().size(), Rat(0)));
    EXPECT_TRUE(is_zero_by_arcs(z));
}

TEST(MonomialArc, RejectsBadData)
{
    ToricModel m = p2_model();
    EXPECT_THROW(MonomialArc(m, {0, 1}, {1}), Error);
    EXPECT_THROW(MonomialArc(m, {0, 9}, {1, 1}), Error);
    EXPECT_THROW(MonomialArc(m, {0, 1}, {1, -1}), Error);
    // rays 0 and 2 span no common cone on P^1 x P^1 with positive orders
    ToricModel pp = p1xp1_model();
    EXPECT_THROW(MonomialArc(pp, {0, 2}, {1, 1}), Error);
    EXPECT_NO_THROW(MonomialArc(pp, {0, 2}, {1, 0}));
}

}  // namespace
