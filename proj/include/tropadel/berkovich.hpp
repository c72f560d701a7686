#ifndef TROPADEL_BERKOVICH_HPP
#define TROPADEL_BERKOVICH_HPP

#include "tropadel/toric_divisor.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace tropadel {

// Coefficient fields handled exactly: a trivially valued field, or rational
// functions in t with v(t) = 1. Seminorms are handled additively as
// valuations (v = -log), so nothing ever materializes as a float.
enum class CoeffKind { trivial, t_adic };

// Coefficient in the trivially valued field: valuation 0 unless zero.
struct TrivialCoeff {
    Rat value;

    bool is_zero() const { return value == 0; }
    std::optional<Rat> valuation() const
    {
        if (is_zero()) return std::nullopt;
        return Rat(0);
    }
    TrivialCoeff operator*(const TrivialCoeff& o) const { return {value * o.value}; }
    TrivialCoeff operator+(const TrivialCoeff& o) const { return {value + o.value}; }

    static TrivialCoeff one() { return {Rat(1)}; }
};

// Laurent polynomial in t over Q, with v = order of vanishing at t = 0.
struct TadicCoeff {
    std::map<long, Rat> terms;  // exponent of t -> coefficient, no zeros stored

    bool is_zero() const { return terms.empty(); }
    std::optional<Rat> valuation() const
    {
        if (terms.empty()) return std::nullopt;
        return Rat(terms.begin()->first);
    }
    TadicCoeff operator*(const TadicCoeff& o) const
    {
        TadicCoeff r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                const Rat c = r.terms[e1 + e2] += c1 * c2;
                if (c == 0) r.terms.erase(e1 + e2);
            }
        return r;
    }
    TadicCoeff operator+(const TadicCoeff& o) const
    {
        TadicCoeff r = *this;
        for (const auto& [e, c] : o.terms) {
            const Rat s = r.terms[e] += c;
            if (s == 0) r.terms.erase(e);
        }
        return r;
    }

    static TadicCoeff monomial(long e, Rat c)
    {
        TadicCoeff r;
        if (c != 0) r.terms[e] = std::move(c);
        return r;
    }
    static TadicCoeff one() { return monomial(0, Rat(1)); }
};

// Laurent polynomial on the torus: finite sum of coeff * chi^m.
template <class C>
class LaurentPoly {
public:
    using Exponent = std::vector<long>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::map<Exponent, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& m, const C& c)
    {
        if (m.size() != dim_) throw Error("laurent term exponent has wrong dimension");
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly operator*(const LaurentPoly& o) const
    {
        if (dim_ != o.dim_) throw Error("laurent multiplication: dimension mismatch");
        LaurentPoly r(dim_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                Exponent m(dim_);
                for (std::size_t i = 0; i < dim_; ++i) m[i] = m1[i] + m2[i];
                r.add_term(m, c1 * c2);
            }
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const
    {
        if (dim_ != o.dim_) throw Error("laurent addition: dimension mismatch");
        LaurentPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

private:
    std::size_t dim_ = 0;
    std::map<Exponent, C> terms_;
};

// A scaled monomial valuation on the torus: hybrid exponent tau in [0,1] and
// a cocharacter a with rational coordinates.
struct MonomialPoint {
    Rat tau;
    QVec a;
    CoeffKind spec = CoeffKind::trivial;

    MonomialPoint(Rat tau_, QVec a_, CoeffKind spec_ = CoeffKind::trivial)
        : tau(std::move(tau_)), a(std::move(a_)), spec(spec_)
    {
        if (tau < 0 || tau > 1) throw Error("hybrid exponent must lie in [0,1]");
    }

    bool operator==(const MonomialPoint& o) const
    {
        return tau == o.tau && a == o.a && spec == o.spec;
    }
};

// v(f at p) = min over terms of tau * v(coeff) + <m, a>, working additively in
// the value group. Empty result means f = 0 (valuation +infinity).
template <class C>
std::optional<Rat> valuation_eval(const MonomialPoint& p, const LaurentPoly<C>& f)
{
    if (f.dim() != p.a.size()) throw Error("valuation_eval: dimension mismatch");
    std::optional<Rat> best;
    for (const auto& [m, c] : f.terms()) {
        const auto vc = c.valuation();
        if (!vc) continue;
        Rat v = p.tau * (*vc);
        for (std::size_t i = 0; i < m.size(); ++i) v += Rat(m[i]) * p.a[i];
        if (!best || v < *best) best = v;
    }
    return best;
}

// Tropicalization of a monomial point and its section.
inline QVec trop(const MonomialPoint& p) { return p.a; }

inline MonomialPoint emb(const QVec& a, const Rat& tau, CoeffKind spec = CoeffKind::trivial)
{
    return MonomialPoint(tau, a, spec);
}

// The retraction q = emb . trop; idempotent on represented points.
inline MonomialPoint retract(const MonomialPoint& p) { return emb(trop(p), p.tau, p.spec); }

// Restriction of the seminorm to the coefficient field, as the hybrid
// interval coordinate.
inline Rat hybrid_structure_map(const MonomialPoint& p) { return p.tau; }

// Norm equivalence: |.|_x = |.|_y^s for a positive rational s, i.e.
// (tau_x, a_x) = s (tau_y, a_y). Returns the scalar if one exists.
inline std::optional<Rat> norm_equivalent(const MonomialPoint& x, const MonomialPoint& y)
{
    if (x.spec != y.spec || x.a.size() != y.a.size()) return std::nullopt;
    QVec vx = x.a, vy = y.a;
    vx.push_back(x.tau);
    vy.push_back(y.tau);
    std::optional<Rat> s;
    for (std::size_t i = 0; i < vx.size(); ++i) {
        if (vy[i] == 0) {
            if (vx[i] != 0) return std::nullopt;
            continue;
        }
        const Rat r = vx[i] / vy[i];
        if (s && *s != r) return std::nullopt;
        s = r;
    }
    if (!s) return Rat(1);  // both points are the trivial valuation
    if (*s <= 0) return std::nullopt;
    return s;
}

// Green function of the boundary-ideal blowup with the given monomial
// generators, at a monomial point over trivially valued coefficients:
// min over generators of <m_i, a>.
inline Rat model_green(const std::vector<std::vector<long>>& gens, const MonomialPoint& p)
{
    if (gens.empty()) throw Error("model_green: empty generator list");
    std::optional<Rat> best;
    for (const auto& m : gens) {
        if (m.size() != p.a.size()) throw Error("model_green: dimension mismatch");
        Rat v(0);
        for (std::size_t i = 0; i < m.size(); ++i) v += Rat(m[i]) * p.a[i];
        if (v < 0) throw Error("point outside reduction locus of the ideal");
        if (!best || v < *best) best = v;
    }
    return *best;
}

inline std::vector<std::vector<long>> ideal_product(const std::vector<std::vector<long>>& a,
                                                    const std::vector<std::vector<long>>& b)
{
    std::vector<std::vector<long>> out;
    for (const auto& m1 : a)
        for (const auto& m2 : b) {
            std::vector<long> m(m1.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            out.push_back(std::move(m));
        }
    return out;
}

inline std::vector<std::vector<long>> ideal_sum(std::vector<std::vector<long>> a,
                                                const std::vector<std::vector<long>>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Interior criterion: the Green function of an effective boundary divisor
// vanishes at a monomial point exactly when the point reduces into the
// complement of the divisor's support.
inline bool interior_test(const MonomialPoint& p, const ToricDivisor& z)
{
    if (!z.fan().is_complete()) throw Error("interior test needs a complete model");
    if (!z.is_effective()) throw Error("interior test needs an effective boundary divisor");
    return supporting_function(z).eval(p.a) == 0;
}

// Numeric validation of the hybrid power triangle inequality: with
// ||.|| = |.|^t on the complex numbers, ||x+y||^{1/t} <= ||x||^{1/t} + ||y||^{1/t}.
struct HybridTriangleReport {
    double max_violation = 0.0;
    int samples = 0;
};

inline HybridTriangleReport hybrid_triangle_check(const Rat& t, int samples,
                                                  std::uint64_t seed = 0)
{
    if (t <= 0 || t > 1) throw Error("hybrid exponent must lie in (0,1]");
    const double td = to_double(t);
    HybridTriangleReport rep;
    rep.samples = samples;
    auto unit = [](std::uint64_t h) { return (static_cast<double>(h >> 11)) / 9007199254740992.0; };
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t h = splitmix64(seed ^ (0x5851f42d4c957f2dull + i));
        std::complex<double> x(2 * unit(h) - 1, 2 * unit(splitmix64(h)) - 1);
        std::complex<double> y(2 * unit(splitmix64(h ^ 0xabcd)) - 1, 2 * unit(splitmix64(h ^ 0x1234)) - 1);
        const double nx = std::pow(std::abs(x), td);
        const double ny = std::pow(std::abs(y), td);
        const double ns = std::pow(std::abs(x + y), td);
        const double lhs = std::pow(ns, 1.0 / td);
        const double rhs = std::pow(nx, 1.0 / td) + std::pow(ny, 1.0 / td);
        rep.max_violation = std::max(rep.max_violation, lhs - rhs);
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    return rep;
}

}  // namespace tropadel

#endif
