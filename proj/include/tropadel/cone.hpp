#ifndef TROPADEL_CONE_HPP
#define TROPADEL_CONE_HPP

#include "tropadel/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace tropadel {

// Generator description of a polyhedral cone: nonnegative span of `rays`
// plus the linear span of `lineality`.
struct ConeDesc {
    std::vector<QVec> rays;
    std::vector<QVec> lineality;
};

inline bool lex_less(const QVec& a, const QVec& b)
{
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

inline void sort_dedupe(std::vector<QVec>& vs)
{
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

namespace detail {

// Drops rays whose active constraint set has too small a rank to be extreme,
// given the constraints processed so far. Keeps the description minimal after
// every double-description step.
inline void prune_nonextreme(std::vector<QVec>& rays, const std::vector<QVec>& processed,
                             std::size_t dim, std::size_t lineality_dim)
{
    if (rays.empty()) return;
    sort_dedupe(rays);
    if (dim < lineality_dim + 1) {
        rays.clear();
        return;
    }
    const std::size_t need = dim - lineality_dim - 1;
    std::vector<QVec> kept;
    for (const auto& r : rays) {
        QMat active;
        for (const auto& h : processed)
            if (dot(h, r) == 0) active.push_back(h);
        if (rank(std::move(active)) >= need) kept.push_back(r);
    }
    rays.swap(kept);
}

}  // namespace detail

// Double description method: generators of
//   { x : <h,x> >= 0 for h in ineqs,  <e,x> = 0 for e in eqs }.
// Exact over the rationals; intended for small ambient dimension.
inline ConeDesc cone_from_inequalities(std::size_t dim, const std::vector<QVec>& ineqs,
                                       const std::vector<QVec>& eqs = {})
{
    std::vector<QVec> all;
    for (const auto& e : eqs) {
        if (is_zero(e)) continue;
        all.push_back(e);
        all.push_back(negate(e));
    }
    for (const auto& h : ineqs) {
        if (is_zero(h)) continue;
        all.push_back(h);
    }

    ConeDesc c;
    for (std::size_t i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        c.lineality.push_back(std::move(e));
    }

    std::vector<QVec> processed;
    for (const auto& h : all) {
        // Case 1: lineality sticks out of the halfspace.
        std::size_t pivot = c.lineality.size();
        for (std::size_t i = 0; i < c.lineality.size(); ++i) {
            if (dot(h, c.lineality[i]) != 0) { pivot = i; break; }
        }
        if (pivot < c.lineality.size()) {
            QVec l0 = c.lineality[pivot];
            Rat s0 = dot(h, l0);
            if (s0 < 0) { l0 = negate(l0); s0 = -s0; }
            std::vector<QVec> new_lin;
            for (std::size_t i = 0; i < c.lineality.size(); ++i) {
                if (i == pivot) continue;
                const Rat s = dot(h, c.lineality[i]);
                new_lin.push_back(primitive(c.lineality[i] - (s / s0) * l0));
            }
            std::vector<QVec> new_rays;
            for (const auto& r : c.rays) {
                const Rat s = dot(h, r);
                QVec w = primitive(r - (s / s0) * l0);
                if (!is_zero(w)) new_rays.push_back(std::move(w));
            }
            new_rays.push_back(primitive(l0));
            c.lineality.swap(new_lin);
            c.rays.swap(new_rays);
            processed.push_back(h);
            detail::prune_nonextreme(c.rays, processed, dim, c.lineality.size());
            continue;
        }

        // Case 2: lineality inside the hyperplane; split rays by sign.
        std::vector<QVec> pos, zero, neg;
        for (const auto& r : c.rays) {
            const int s = sign(dot(h, r));
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
        }
        if (neg.empty()) {
            processed.push_back(h);
            continue;  // already contained
        }
        std::vector<QVec> combos;
        for (const auto& p : pos) {
            for (const auto& m : neg) {
                QVec w = primitive(dot(h, p) * m - dot(h, m) * p);
                if (!is_zero(w)) combos.push_back(std::move(w));
            }
        }
        std::vector<QVec> new_rays = pos;
        new_rays.insert(new_rays.end(), zero.begin(), zero.end());
        new_rays.insert(new_rays.end(), combos.begin(), combos.end());
        c.rays.swap(new_rays);
        processed.push_back(h);
        detail::prune_nonextreme(c.rays, processed, dim, c.lineality.size());
    }

    // Canonical form: echelonized primitive lineality basis, sorted rays.
    if (!c.lineality.empty()) {
        QMat m(c.lineality.begin(), c.lineality.end());
        row_reduce(m);
        c.lineality.clear();
        for (auto& row : m) {
            if (!is_zero(row)) c.lineality.push_back(primitive(row));
        }
    }
    sort_dedupe(c.rays);
    return c;
}

// Inequality description of the cone spanned by the given generators:
// the dual cone's generators are the facet normals (rays) and the span
// equalities (lineality).
struct IneqDesc {
    std::vector<QVec> ineqs;  // <h,x> >= 0
    std::vector<QVec> eqs;    // <e,x> = 0
};

inline IneqDesc inequalities_from_generators(std::size_t dim, const std::vector<QVec>& rays,
                                             const std::vector<QVec>& lineality = {})
{
    std::vector<QVec> constraints = rays;
    for (const auto& l : lineality) {
        constraints.push_back(l);
        constraints.push_back(negate(l));
    }
    ConeDesc dual = cone_from_inequalities(dim, constraints);
    return IneqDesc{dual.rays, dual.lineality};
}

// A strictly convex (pointed) rational polyhedral cone, stored by its
// extreme primitive rays in canonical order. Facet data is computed lazily.
class Cone {
public:
    Cone() = default;

    // Canonicalizes an arbitrary generating set: extracts the extreme rays.
    // Throws if the generated cone contains a line.
    static Cone from_rays(std::size_t dim, std::vector<QVec> gens)
    {
        for (auto& g : gens) g = primitive(g);
        gens.erase(std::remove_if(gens.begin(), gens.end(),
                                  [](const QVec& v) { return is_zero(v); }),
                   gens.end());
        sort_dedupe(gens);
        if (dim == 2 && gens.size() == 2) {
            const Rat c = gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0];
            if (c == 0) throw Error("cone is not strictly convex");
            Cone out;
            out.dim_ = dim;
            out.rays_ = std::move(gens);
            return out;
        }
        if (gens.size() <= 1) {
            Cone out;
            out.dim_ = dim;
            out.rays_ = std::move(gens);
            return out;
        }
        IneqDesc in = inequalities_from_generators(dim, gens);
        ConeDesc back = cone_from_inequalities(dim, in.ineqs, in.eqs);
        if (!back.lineality.empty()) throw Error("cone is not strictly convex");
        Cone c;
        c.dim_ = dim;
        c.rays_ = std::move(back.rays);
        c.ineqs_ = std::move(in);
        return c;
    }

    // Rays already known to be the extreme rays (e.g. a face of a canonical cone).
    static Cone trusted(std::size_t dim, std::vector<QVec> extreme_rays)
    {
        Cone c;
        c.dim_ = dim;
        c.rays_ = std::move(extreme_rays);
        sort_dedupe(c.rays_);
        return c;
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<QVec>& rays() const { return rays_; }
    std::size_t cone_dim() const { return rank_of_vectors(rays_); }
    bool is_simplicial() const { return cone_dim() == rays_.size(); }

    const IneqDesc& inequality_description() const
    {
        if (!ineqs_) {
            if (dim_ == 2 && rays_.size() == 2) {
                auto perp_toward = [](const QVec& kill, const QVec& keep) {
                    QVec h = {-kill[1], kill[0]};
                    if (dot(h, keep) < 0) h = negate(h);
                    return h;
                };
                ineqs_ = IneqDesc{{perp_toward(rays_[0], rays_[1]), perp_toward(rays_[1], rays_[0])}, {}};
            } else if (dim_ == 2 && rays_.size() == 1) {
                ineqs_ = IneqDesc{{rays_[0]}, {QVec{-rays_[0][1], rays_[0][0]}}};
            } else {
                ineqs_ = inequalities_from_generators(dim_, rays_);
            }
        }
        return *ineqs_;
    }

    // Membership by triangulation into simplicial subcones and exact solves;
    // points on faces count as contained.
    bool contains(const QVec& a) const
    {
        if (a.size() != dim_) throw Error("cone membership: dimension mismatch");
        if (is_zero(a)) return true;
        if (dim_ == 2 && rays_.size() == 2) {
            const QVec *r1 = &rays_[0], *r2 = &rays_[1];
            Rat c = (*r1)[0] * (*r2)[1] - (*r1)[1] * (*r2)[0];
            if (c < 0) std::swap(r1, r2);
            return ((*r1)[0] * a[1] - (*r1)[1] * a[0]) >= 0 &&
                   (a[0] * (*r2)[1] - a[1] * (*r2)[0]) >= 0;
        }
        if (dim_ == 2 && rays_.size() == 1) {
            return (rays_[0][0] * a[1] - rays_[0][1] * a[0]) == 0 && dot(rays_[0], a) >= 0;
        }
        for (const auto& simplex : triangulation()) {
            const auto x = solve_columns(simplex, a);
            if (!x) continue;
            bool ok = true;
            for (const auto& xi : *x)
                if (xi < 0) { ok = false; break; }
            if (ok) return true;
        }
        return false;
    }

    // Facets as (inward normal, extreme rays lying on the facet).
    struct Facet {
        QVec normal;
        std::vector<QVec> rays;
    };

    std::vector<Facet> facets() const
    {
        const IneqDesc& d = inequality_description();
        std::vector<Facet> fs;
        for (const auto& h : d.ineqs) {
            Facet f;
            f.normal = h;
            for (const auto& r : rays_)
                if (dot(h, r) == 0) f.rays.push_back(r);
            if (!f.rays.empty()) fs.push_back(std::move(f));
        }
        // The origin facet of a full set of rays in dimension one has no rays;
        // callers treat 1-dimensional cones separately.
        return fs;
    }

    // Simplicial subcones (as ray lists) covering this cone, sharing its faces.
    const std::vector<std::vector<QVec>>& triangulation() const
    {
        if (!triangulation_) {
            triangulation_ = std::vector<std::vector<QVec>>{};
            triangulate_into(*triangulation_);
        }
        return *triangulation_;
    }

    Cone intersect(const Cone& other) const
    {
        if (dim_ != other.dim_) throw Error("cone intersection: dimension mismatch");
        const IneqDesc& a = inequality_description();
        const IneqDesc& b = other.inequality_description();
        std::vector<QVec> ineqs = a.ineqs;
        ineqs.insert(ineqs.end(), b.ineqs.begin(), b.ineqs.end());
        std::vector<QVec> eqs = a.eqs;
        eqs.insert(eqs.end(), b.eqs.begin(), b.eqs.end());
        ConeDesc c = cone_from_inequalities(dim_, ineqs, eqs);
        return trusted(dim_, std::move(c.rays));
    }

    // This cone cut by the halfspace {<h,x> >= 0}.
    Cone intersect_halfspace(const QVec& h) const
    {
        const IneqDesc& a = inequality_description();
        std::vector<QVec> ineqs = a.ineqs;
        ineqs.push_back(h);
        ConeDesc c = cone_from_inequalities(dim_, ineqs, a.eqs);
        return trusted(dim_, std::move(c.rays));
    }

    bool operator==(const Cone& other) const { return rays_ == other.rays_; }

private:
    void triangulate_into(std::vector<std::vector<QVec>>& out) const
    {
        if (rays_.empty()) return;
        if (is_simplicial()) {
            out.push_back(rays_);
            return;
        }
        const QVec& apex = rays_.front();
        for (const auto& f : facets()) {
            bool apex_on_facet = false;
            for (const auto& r : f.rays)
                if (r == apex) { apex_on_facet = true; break; }
            if (apex_on_facet) continue;
            Cone facet_cone = Cone::trusted(dim_, f.rays);
            for (const auto& simplex : facet_cone.triangulation()) {
                std::vector<QVec> piece = simplex;
                piece.push_back(apex);
                out.push_back(std::move(piece));
            }
        }
    }

    std::size_t dim_ = 0;
    std::vector<QVec> rays_;
    mutable std::optional<IneqDesc> ineqs_;
    mutable std::optional<std::vector<std::vector<QVec>>> triangulation_;
};

}  // namespace tropadel

#endif
