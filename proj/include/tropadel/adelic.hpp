#ifndef TROPADEL_ADELIC_HPP
#define TROPADEL_ADELIC_HPP

#include "tropadel/berkovich.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace tropadel {

// A boundary divisor with strictly positive coefficients on every ray of a
// complete fan; its supporting function is positive away from the origin and
// defines the boundary norm.
class BoundaryDatum {
public:
    explicit BoundaryDatum(ToricDivisor z) : z_(std::move(z))
    {
        if (!z_.fan().is_complete()) throw Error("boundary datum requires a complete fan");
        for (const auto& c : z_.coeffs())
            if (c <= 0) throw Error("boundary datum requires strictly positive coefficients");
        ToricModel simp(simplicialize(z_.fan()));
        QMat id(z_.fan().dim(), qvec_zero(z_.fan().dim()));
        for (std::size_t i = 0; i < id.size(); ++i) id[i][i] = 1;
        sf_ = supporting_function(z_.fan().is_simplicial() ? z_ : pullback_linear(z_, id, simp));
        min_coeff_ = z_.coeffs()[0];
        for (const auto& c : z_.coeffs()) min_coeff_ = rat_min(min_coeff_, c);
    }

    const ToricDivisor& divisor() const { return z_; }
    const PLConical& sf() const { return sf_; }
    const Rat& min_ray_value() const { return min_coeff_; }

private:
    ToricDivisor z_;
    PLConical sf_;
    Rat min_coeff_;
};

// ||f||_Z = inf{eps : -eps Z <= f <= eps Z} = sup |f| / SF_Z; finite for every
// PL function supported on the fan of a positive boundary divisor.
inline SupRatio boundary_norm(const PLConical& f, const BoundaryDatum& z)
{
    return sup_ratio(f, z.sf());
}

// A constructive toric adelic divisor: a Cauchy sequence of PL conical
// functions on toric models, with a non-increasing error schedule under the
// boundary norm of `boundary`. Terms may be materialized lazily through a
// deterministic per-depth generator.
class AdelicDivisor {
public:
    AdelicDivisor(BoundaryDatum boundary, std::vector<PLConical> terms, std::vector<Rat> epsilons)
        : boundary_(std::move(boundary)), terms_(std::move(terms)), epsilons_(std::move(epsilons))
    {
        if (terms_.empty()) throw Error("adelic divisor needs at least one term");
        if (terms_.size() != epsilons_.size()) throw Error("epsilon schedule length mismatch");
        for (std::size_t i = 0; i + 1 < epsilons_.size(); ++i)
            if (epsilons_[i] < epsilons_[i + 1]) throw Error("epsilon schedule must be non-increasing");
        for (const auto& e : epsilons_)
            if (e < 0) throw Error("epsilons must be nonnegative");
    }

    const BoundaryDatum& boundary() const { return boundary_; }
    const std::vector<PLConical>& terms() const { return terms_; }
    const std::vector<Rat>& epsilons() const { return epsilons_; }
    std::size_t materialized() const { return terms_.size(); }

    const PLConical& deepest() const { return terms_.back(); }

    void attach_generator(std::function<PLConical(int)> gen) { generator_ = std::move(gen); }
    bool extendable() const { return static_cast<bool>(generator_); }

    // Deterministic extend-to-depth contract: materializes terms up to index
    // `depth` via the generator and re-measures the epsilon schedule exactly.
    void extend_to(std::size_t depth)
    {
        if (depth < terms_.size()) return;
        if (!generator_) throw Error("adelic divisor has no generator to extend with");
        while (terms_.size() <= depth) terms_.push_back(generator_(static_cast<int>(terms_.size())));
        remeasure_epsilons();
    }

    // Exact epsilon schedule from measured consecutive boundary norms with 25%
    // headroom: eps_i = 5/4 * sum_{k >= i} ||f_k - f_{k+1}||_Z + tail. The
    // triangle inequality makes every pair (i, j) satisfy the Cauchy condition
    // against eps_i; the tail bound covers the unmaterialized limit.
    void remeasure_epsilons(std::optional<Rat> tail_bound = std::nullopt)
    {
        Rat tail(0);
        if (tail_bound) tail = *tail_bound;
        else if (!epsilons_.empty()) tail = epsilons_.back();
        std::vector<Rat> eps(terms_.size(), tail);
        Rat acc(0);
        for (std::size_t i = terms_.size() - 1; i-- > 0;) {
            const auto sr = boundary_norm(subtract(terms_[i], terms_[i + 1]), boundary_);
            if (!sr.finite()) throw Error("inter-term boundary norm is infinite");
            acc += *sr.value;
            eps[i] = acc * Rat(5, 4) + tail;
        }
        epsilons_ = std::move(eps);
    }

private:
    BoundaryDatum boundary_;
    std::vector<PLConical> terms_;
    std::vector<Rat> epsilons_;
    std::function<PLConical(int)> generator_;
};

// Exact pairwise Cauchy verification against the declared schedule.
struct CauchyPair {
    std::size_t i = 0, j = 0;
    std::optional<Rat> norm;  // nullopt = infinite
    Rat bound;
    bool pass = false;
    QVec witness;
};

struct CauchyReport {
    std::vector<CauchyPair> pairs;
    bool pass = true;
};

inline CauchyReport verify_cauchy(const AdelicDivisor& a, std::size_t prefix)
{
    if (prefix > a.materialized()) throw Error("cauchy prefix exceeds materialized length");
    CauchyReport rep;
    for (std::size_t i = 0; i < prefix; ++i) {
        for (std::size_t j = i + 1; j < prefix; ++j) {
            const auto sr = boundary_norm(subtract(a.terms()[i], a.terms()[j]), a.boundary());
            CauchyPair p;
            p.i = i;
            p.j = j;
            p.norm = sr.value;
            p.bound = a.epsilons()[i];
            p.pass = sr.finite() && *sr.value <= p.bound;
            p.witness = sr.witness;
            if (!p.pass) rep.pass = false;
            rep.pairs.push_back(std::move(p));
        }
    }
    return rep;
}

// Constructive approximation of a continuous conical oracle by model toric
// divisors: barycentric refinements of the reference fan at increasing depth
// until the sampled inter-term deviation over the minimal boundary
// coefficient falls below target_eps. Epsilons are then measured exactly.
inline AdelicDivisor from_oracle(const ConicalOracle& o, const Fan& reference,
                                 const BoundaryDatum& z, const Rat& target_eps,
                                 int grid_target = 10000, int jobs = 1)
{
    if (target_eps <= 0) throw Error("target epsilon must be positive");
    if (!reference.is_complete() || !reference.is_simplicial())
        throw Error("from_oracle: reference fan must be complete and simplicial");
    if (!oracle_homogeneity_ok(o, reference.dim()))
        throw Error("oracle fails the degree-one homogeneity spot-check");
    if (!support_equal_sampled(reference, z.divisor().fan()))
        throw Error("boundary datum and reference fan have different supports");

    constexpr int kMaxDepth = 16;
    const auto grid = cross_section_grid(reference, grid_target);

    std::vector<PLConical> terms;
    double last_oracle_dev = 0.0;
    Fan current = reference;
    for (int d = 0;; ++d) {
        if (d > kMaxDepth)
            throw Error("from_oracle did not converge by depth 16; oracle may not be uniformly "
                        "approximable at this target");
        if (d > 0) current = barycentric_subdivision(current);
        auto res = approximate_on(o, current, d, grid, jobs);
        last_oracle_dev = res.report.deviation_estimate;
        terms.push_back(std::move(res.fn));
        if (d == 0 && last_oracle_dev == 0.0) break;  // oracle already PL on the reference fan
        if (d > 0) {
            double dev = 0.0;
            for (const auto& x : grid)
                dev = std::max(dev, std::abs(to_double(terms[d - 1].eval(x)) - to_double(terms[d].eval(x))));
            if (dev / to_double(z.min_ray_value()) < to_double(target_eps)) break;
        }
    }

    // tail bound for the deepest term: sampled deviation from the oracle
    // relative to SF_Z, inflated by 25%
    Rat tail(0);
    if (last_oracle_dev > 0.0) {
        double worst = 0.0;
        for (const auto& x : grid) {
            const double num = std::abs(to_double(terms.back().eval(x)) - o.eval(x));
            const double den = to_double(z.sf().eval(x));
            if (den > 0) worst = std::max(worst, num / den);
        }
        tail = rat_from_double_dyadic(worst * 1.25, 48);
    }

    const std::size_t count = terms.size();
    AdelicDivisor a(z, std::move(terms), std::vector<Rat>(count, Rat(0)));
    a.remeasure_epsilons(tail);
    return a;
}

// Green function of the adelic divisor at a monomial point: the deepest
// materialized term evaluated at trop(p), with the exact certified bound
// eps_i * SF_Z(trop p). Fails if the bound cannot meet the tolerance.
struct GreenValue {
    Rat value;
    Rat certified_error;
    std::size_t depth_used = 0;
};

inline GreenValue green_of_adelic(const AdelicDivisor& a, const MonomialPoint& p, const Rat& tol)
{
    const QVec x = trop(p);
    const Rat sfz = a.boundary().sf().eval(x);
    const std::size_t i = a.materialized() - 1;
    const Rat bound = a.epsilons()[i] * sfz;
    if (bound > tol)
        throw Error("tolerance unreachable within the materialized prefix (bound " +
                    rat_to_string(bound) + " > " + rat_to_string(tol) + ")");
    return GreenValue{a.deepest().eval(x), bound, i};
}

}  // namespace tropadel

#endif
