#ifndef TROPADEL_INTERSECT_HPP
#define TROPADEL_INTERSECT_HPP

#include "tropadel/adelic.hpp"
#include "tropadel/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tropadel {

namespace detail {

// Walls of a complete simplicial fan: shared facets of adjacent maximal
// cones, with the ray of the second cone opposite the facet.
struct Wall {
    std::size_t cone_a = 0, cone_b = 0;
    int opposite_ray = 0;  // ray index of cone_b not on the shared facet
};

inline std::vector<Wall> fan_walls(const Fan& f)
{
    std::map<std::vector<int>, std::vector<std::size_t>> facet_cones;
    for (std::size_t k = 0; k < f.max_cones().size(); ++k) {
        const auto& c = f.max_cones()[k];
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> key;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) key.push_back(c[i]);
            facet_cones[key].push_back(k);
        }
    }
    std::vector<Wall> walls;
    for (const auto& [key, cones] : facet_cones) {
        if (cones.size() != 2) continue;
        Wall w;
        w.cone_a = cones[0];
        w.cone_b = cones[1];
        for (int idx : f.max_cones()[w.cone_b]) {
            if (std::find(key.begin(), key.end(), idx) == key.end()) w.opposite_ray = idx;
        }
        walls.push_back(w);
    }
    return walls;
}

// Signed bend of a PL conical function across a wall: positive exactly when
// the function is convex there (value above the linear extension from the
// neighboring cone).
inline Rat wall_bend(const PLConical& f, const Wall& w)
{
    const QVec ext = f.cone_functional(w.cone_a);
    const QVec& v = f.fan().rays()[w.opposite_ray];
    return f.value_at_ray(w.opposite_ray) - dot(ext, v);
}

}  // namespace detail

// True iff the supporting function is convex, i.e. the divisor is nef; for
// complete simplicial fans wall-local convexity is equivalent to global.
inline bool is_convex_on_walls(const PLConical& f)
{
    for (const auto& w : detail::fan_walls(f.fan()))
        if (detail::wall_bend(f, w) < 0) return false;
    return true;
}

// The divisor polytope P_D = { m : <m, v_rho> + a_rho >= 0 for all rays }.
// Complete fans make this a (possibly empty) bounded polytope.
inline Polytope polytope_of(const ToricDivisor& d)
{
    const Fan& fan = d.fan();
    if (!fan.is_complete()) throw Error("divisor polytope needs a complete fan");
    const std::size_t n = fan.dim();

    // convex two-dimensional divisors: one vertex candidate per maximal cone
    if (n == 2 && fan.is_simplicial()) {
        PLConical sf(fan, d.coeffs());
        if (is_convex_on_walls(sf)) {
            std::vector<QVec> verts;
            for (const auto& c : fan.max_cones()) {
                const QVec& v1 = fan.rays()[c[0]];
                const QVec& v2 = fan.rays()[c[1]];
                const Rat det = v1[0] * v2[1] - v1[1] * v2[0];
                const Rat b1 = -d.coeffs()[c[0]], b2 = -d.coeffs()[c[1]];
                verts.push_back({(b1 * v2[1] - b2 * v1[1]) / det, (v1[0] * b2 - v2[0] * b1) / det});
            }
            return Polytope::from_points(2, std::move(verts));
        }
    }

    std::vector<QVec> normals = fan.rays();
    std::vector<Rat> offsets = d.coeffs();
    return Polytope::from_half_spaces(n, normals, offsets);
}

// A nef toric divisor: certified by the upper-envelope identity
// max_{m in P_D} (-<m, v_rho>) = a_rho on every ray.
class NefDivisor {
public:
    explicit NefDivisor(ToricDivisor d) : d_(std::move(d)), polytope_(polytope_of(d_))
    {
        const Fan& fan = d_.fan();
        for (std::size_t i = 0; i < fan.rays().size(); ++i) {
            const auto got = polytope_.support(negate(fan.rays()[i]));
            if (!got || *got != d_.coeffs()[i]) {
                throw Error("divisor is not nef: envelope fails at ray " + std::to_string(i) +
                            " (" + rat_to_string(d_.coeffs()[i]) + " expected)");
            }
        }
    }

    const ToricDivisor& divisor() const { return d_; }
    const Polytope& polytope() const { return polytope_; }

private:
    ToricDivisor d_;
    Polytope polytope_;
};

// Intersection number of dim-many nef divisors on a common complete fan:
// n! times the mixed volume of their polytopes.
inline Rat intersection_number(const std::vector<NefDivisor>& ds)
{
    if (ds.empty()) throw Error("intersection number of an empty list");
    const std::size_t n = ds[0].divisor().fan().dim();
    if (ds.size() != n) throw Error("intersection number needs dim-many divisors");
    for (const auto& d : ds)
        if (!d.divisor().fan().same_rays_and_cones(ds[0].divisor().fan()))
            throw Error("intersection number: divisors on different fans");
    std::vector<Polytope> ps;
    for (const auto& d : ds) ps.push_back(d.polytope());
    Int fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    return Rat(fact) * mixed_volume(ps);
}

namespace detail {

// (f . L_1 ... L_{n-1}) for a PL model term f, via the shift decomposition
// f = (f + c SF_Z) - c SF_Z with the minimal rational c making both parts
// convex on f's fan. Exact; independent of the admissible c by mixed-volume
// multilinearity.
inline Rat pair_term(const PLConical& f, const std::vector<Polytope>& l_polys,
                     const BoundaryDatum& z)
{
    Fan fan = f.fan();
    PLConical term = f;
    if (!support_equal_sampled(fan, z.divisor().fan()))
        throw Error("term and boundary datum have different supports");
    {
        // both f and SF_Z must be PL on the working fan
        Fan refined = simplicialize(common_refinement(fan, z.divisor().fan()));
        if (!refined.same_rays_and_cones(fan)) {
            std::vector<Rat> vals;
            for (const auto& v : refined.rays()) vals.push_back(f.eval(v));
            term = PLConical(refined, std::move(vals));
            fan = refined;
        }
    }
    std::vector<Rat> zvals;
    for (const auto& v : fan.rays()) zvals.push_back(z.sf().eval(v));
    PLConical zf(fan, zvals);

    Rat c(0);
    for (const auto& w : detail::fan_walls(fan)) {
        const Rat bf = detail::wall_bend(term, w);
        const Rat bz = detail::wall_bend(zf, w);
        if (bz < 0)
            throw Error("boundary datum is not nef across the wall opposite ray " +
                        std::to_string(w.opposite_ray) + "; no shift decomposition exists");
        if (bf < 0) {
            if (bz == 0)
                throw Error("no nef shift decomposition: wall opposite ray " +
                            std::to_string(w.opposite_ray) +
                            " bends negatively while the boundary is flat there");
            c = rat_max(c, -bf / bz);
        }
    }

    ToricModel model(fan);
    std::vector<Rat> plus_coeffs = term.ray_values(), shift_coeffs = zvals;
    for (std::size_t i = 0; i < plus_coeffs.size(); ++i) {
        plus_coeffs[i] += c * zvals[i];
        shift_coeffs[i] *= c;
    }
    const Polytope p_plus = polytope_of(ToricDivisor(model, plus_coeffs));
    const Polytope p_shift = polytope_of(ToricDivisor(model, shift_coeffs));

    const std::size_t n = fan.dim();
    Int fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;

    std::vector<Polytope> with_plus = l_polys, with_shift = l_polys;
    with_plus.insert(with_plus.begin(), p_plus);
    with_shift.insert(with_shift.begin(), p_shift);
    if (c == 0) return Rat(fact) * mixed_volume(with_plus);
    return Rat(fact) * (mixed_volume(with_plus) - mixed_volume(with_shift));
}

inline std::vector<Polytope> nef_polytopes(const std::vector<NefDivisor>& ls, std::size_t n)
{
    if (ls.size() + 1 != n) throw Error("pairing needs dim-1 nef divisors next to the adelic slot");
    std::vector<Polytope> ps;
    for (const auto& l : ls) ps.push_back(l.polytope());
    return ps;
}

}  // namespace detail

// Extended pairing with one adelic argument: the deepest materialized term's
// exact intersection number, with the certified bound eps_i * (Z . L^{n-1}).
struct PairingResult {
    Rat value;
    Rat certified_error;
    std::size_t depth_used = 0;
};

inline PairingResult pair_adelic(const AdelicDivisor& a, const std::vector<NefDivisor>& ls,
                                 const Rat& tol)
{
    const BoundaryDatum& z = a.boundary();
    const std::size_t n = z.divisor().fan().dim();
    const auto l_polys = detail::nef_polytopes(ls, n);

    const Rat z_pairing = detail::pair_term(z.sf(), l_polys, z);
    const std::size_t i = a.materialized() - 1;
    const Rat bound = a.epsilons()[i] * z_pairing;
    if (bound > tol)
        throw Error("tolerance unreachable within the materialized prefix (bound " +
                    rat_to_string(bound) + " > " + rat_to_string(tol) + ")");
    return PairingResult{detail::pair_term(a.terms()[i], l_polys, z), bound, i};
}

// Exact pairing of a single materialized term against nef divisors; exposed
// for difference bounds and tests.
inline Rat pair_term_exact(const AdelicDivisor& a, std::size_t i, const std::vector<NefDivisor>& ls)
{
    const BoundaryDatum& z = a.boundary();
    const std::size_t n = z.divisor().fan().dim();
    return detail::pair_term(a.terms().at(i), detail::nef_polytopes(ls, n), z);
}

// The global pairing as a linear functional on PL boundary functions: h has
// one value per ray of its fan (the ratio g_E / g_Z at that ray), the model
// divisor E = h * Z is reconstructed ray-wise and paired. For this to be
// well-defined, the common refinement of h's fan and Z's fan must introduce
// no rays beyond h's own.
inline Rat ma_integral(const PLConical& h, const std::vector<NefDivisor>& ls,
                       const BoundaryDatum& z)
{
    const std::size_t n = z.divisor().fan().dim();
    Fan refined = simplicialize(common_refinement(h.fan(), z.divisor().fan()));
    for (const auto& v : refined.rays())
        if (h.fan().ray_index(v) < 0)
            throw Error("h * SF_Z is not piecewise linear on a common refinement: ray " +
                        rat_to_string(v[0]) + ",... is not a ray of h's fan");
    std::vector<Rat> coeffs;
    for (const auto& v : refined.rays()) coeffs.push_back(h.eval(v) * z.sf().eval(v));
    PLConical e(refined, std::move(coeffs));
    return detail::pair_term(e, detail::nef_polytopes(ls, n), z);
}

}  // namespace tropadel

#endif
