#ifndef TROPADEL_POLYTOPE_HPP
#define TROPADEL_POLYTOPE_HPP

#include "tropadel/linalg.hpp"
#include "tropadel/cone.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace tropadel {

namespace hull {

inline Rat cross2(const QVec& o, const QVec& a, const QVec& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Convex hull in the plane (monotone chain), exact. Returns the vertices in
// counterclockwise order, collinear points dropped.
inline std::vector<QVec> convex_hull_2d(std::vector<QVec> pts)
{
    sort_dedupe(pts);
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<QVec> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline Rat det3(const QVec& a, const QVec& b, const QVec& c)
{
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// orient3d(a,b,c,d) > 0 iff d lies on the positive side of the plane abc.
inline Rat orient3d(const QVec& a, const QVec& b, const QVec& c, const QVec& d)
{
    return det3(b - a, c - a, d - a);
}

struct Tri {
    std::array<int, 3> v;
};

// Incremental exact 3D convex hull of full-dimensional point sets; returns
// outward-oriented triangles into `tris`. Points on the current hull are
// skipped (they can never be vertices of the final hull).
inline void convex_hull_3d(const std::vector<QVec>& pts, std::vector<Tri>& tris)
{
    const std::size_t n = pts.size();
    // seed tetrahedron from affinely independent points
    std::size_t i1 = 1;
    while (i1 < n && pts[i1] == pts[0]) ++i1;
    if (i1 == n) throw Error("hull3d: degenerate input");
    std::size_t i2 = i1 + 1;
    while (i2 < n && rank_of_vectors({pts[i1] - pts[0], pts[i2] - pts[0]}) < 2) ++i2;
    if (i2 == n) throw Error("hull3d: degenerate input");
    std::size_t i3 = i2 + 1;
    while (i3 < n && orient3d(pts[0], pts[i1], pts[i2], pts[i3]) == 0) ++i3;
    if (i3 == n) throw Error("hull3d: degenerate input");

    QVec interior = Rat(1, 4) * (pts[0] + pts[i1] + pts[i2] + pts[i3]);
    auto oriented = [&](int a, int b, int c) {
        // outward normal: the interior point lies strictly below the face
        if (orient3d(pts[a], pts[b], pts[c], interior) < 0) return Tri{{a, b, c}};
        return Tri{{a, c, b}};
    };
    tris.clear();
    tris.push_back(oriented(0, static_cast<int>(i1), static_cast<int>(i2)));
    tris.push_back(oriented(0, static_cast<int>(i1), static_cast<int>(i3)));
    tris.push_back(oriented(0, static_cast<int>(i2), static_cast<int>(i3)));
    tris.push_back(oriented(static_cast<int>(i1), static_cast<int>(i2), static_cast<int>(i3)));

    for (std::size_t p = 1; p < n; ++p) {
        if (p == i1 || p == i2 || p == i3) continue;
        std::vector<char> visible(tris.size(), 0);
        bool any = false;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (orient3d(pts[tris[t].v[0]], pts[tris[t].v[1]], pts[tris[t].v[2]], pts[p]) > 0) {
                visible[t] = 1;
                any = true;
            }
        }
        if (!any) continue;  // inside or on the hull
        // horizon: directed edges of visible faces whose twin face is hidden
        std::vector<std::pair<int, int>> horizon;
        auto edge_count = [&](int a, int b) {
            int cnt = 0;
            for (std::size_t t = 0; t < tris.size(); ++t) {
                if (!visible[t]) continue;
                for (int e = 0; e < 3; ++e) {
                    const int u = tris[t].v[e], w = tris[t].v[(e + 1) % 3];
                    if ((u == a && w == b) || (u == b && w == a)) ++cnt;
                }
            }
            return cnt;
        };
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!visible[t]) continue;
            for (int e = 0; e < 3; ++e) {
                const int a = tris[t].v[e], b = tris[t].v[(e + 1) % 3];
                if (edge_count(a, b) == 1) horizon.emplace_back(a, b);
            }
        }
        std::vector<Tri> next;
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (!visible[t]) next.push_back(tris[t]);
        for (const auto& [a, b] : horizon) next.push_back(oriented(a, b, static_cast<int>(p)));
        tris.swap(next);
    }
}

}  // namespace hull

// A rational convex polytope stored by its irredundant vertex list in
// canonical order. The ambient dimension is fixed; the polytope itself may be
// lower-dimensional or empty.
class Polytope {
public:
    Polytope() = default;

    static Polytope empty(std::size_t dim)
    {
        Polytope p;
        p.dim_ = dim;
        return p;
    }

    // Canonicalizes an arbitrary point list to the extreme points.
    static Polytope from_points(std::size_t dim, std::vector<QVec> pts)
    {
        for (const auto& v : pts)
            if (v.size() != dim) throw Error("polytope point has wrong dimension");
        Polytope p;
        p.dim_ = dim;
        sort_dedupe(pts);
        if (pts.empty()) return p;
        p.vertices_ = extreme_points(dim, pts);
        sort_dedupe(p.vertices_);
        return p;
    }

    // Exact vertex enumeration of { m : <normals[i], m> >= -offsets[i] }.
    // The intersection must be bounded (empty is fine).
    static Polytope from_half_spaces(std::size_t dim, const std::vector<QVec>& normals,
                                     const std::vector<Rat>& offsets)
    {
        if (normals.size() != offsets.size()) throw Error("half-space data mismatch");
        const std::size_t m = normals.size();
        std::vector<QVec> verts;
        std::vector<std::size_t> idx(dim);
        // all dim-subsets of constraints; basic solutions that satisfy everything
        std::vector<std::size_t> comb;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (comb.size() == dim) {
                std::vector<QVec> cols(dim, QVec(dim, Rat(0)));
                QVec rhs(dim);
                for (std::size_t r = 0; r < dim; ++r) {
                    for (std::size_t c = 0; c < dim; ++c) cols[c][r] = normals[comb[r]][c];
                    rhs[r] = -offsets[comb[r]];
                }
                QMat rows;
                for (std::size_t r = 0; r < dim; ++r) rows.push_back(normals[comb[r]]);
                if (rank(rows) == dim) {
                    const auto x = solve_columns(cols, rhs);
                    if (x) {
                        bool feasible = true;
                        for (std::size_t i = 0; i < m; ++i) {
                            if (dot(normals[i], *x) < -offsets[i]) { feasible = false; break; }
                        }
                        if (feasible) verts.push_back(*x);
                    }
                }
                return;
            }
            for (std::size_t i = start; i + (dim - comb.size()) <= m; ++i) {
                comb.push_back(i);
                rec(i + 1);
                comb.pop_back();
            }
        };
        if (dim <= m) rec(0);
        return from_points(dim, std::move(verts));
    }

    // Vertices known to be extreme and deduplicated (e.g. from a convex chain).
    static Polytope trusted(std::size_t dim, std::vector<QVec> verts)
    {
        Polytope p;
        p.dim_ = dim;
        p.vertices_ = std::move(verts);
        sort_dedupe(p.vertices_);
        return p;
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<QVec>& vertices() const { return vertices_; }
    bool is_empty() const { return vertices_.empty(); }

    // Exact Lebesgue volume; zero for lower-dimensional polytopes.
    Rat volume() const
    {
        if (vertices_.empty()) return Rat(0);
        if (affine_rank() < dim_) return Rat(0);
        switch (dim_) {
            case 1: {
                Rat lo = vertices_.front()[0], hi = lo;
                for (const auto& v : vertices_) {
                    lo = rat_min(lo, v[0]);
                    hi = rat_max(hi, v[0]);
                }
                return hi - lo;
            }
            case 2: {
                const auto h = hull::convex_hull_2d(vertices_);
                Rat a(0);
                for (std::size_t i = 0; i < h.size(); ++i) {
                    const auto& p = h[i];
                    const auto& q = h[(i + 1) % h.size()];
                    a += p[0] * q[1] - q[0] * p[1];
                }
                return rat_abs(a) / 2;
            }
            case 3: {
                std::vector<hull::Tri> tris;
                hull::convex_hull_3d(vertices_, tris);
                Rat six_vol(0);
                const QVec& o = vertices_.front();
                for (const auto& t : tris)
                    six_vol += hull::det3(vertices_[t.v[0]] - o, vertices_[t.v[1]] - o,
                                          vertices_[t.v[2]] - o);
                return rat_abs(six_vol) / 6;
            }
            default:
                throw Error("volume implemented for ambient dimension <= 3");
        }
    }

    std::size_t affine_rank() const
    {
        if (vertices_.size() <= 1) return 0;
        std::vector<QVec> diffs;
        for (std::size_t i = 1; i < vertices_.size(); ++i)
            diffs.push_back(vertices_[i] - vertices_[0]);
        return rank_of_vectors(diffs);
    }

    // max over vertices of <w, m>; the support value of the polytope.
    std::optional<Rat> support(const QVec& w) const
    {
        if (vertices_.empty()) return std::nullopt;
        Rat best = dot(w, vertices_[0]);
        for (const auto& v : vertices_) best = rat_max(best, dot(w, v));
        return best;
    }

    bool operator==(const Polytope& o) const { return dim_ == o.dim_ && vertices_ == o.vertices_; }

private:
    // Extreme points: corners of the hull whose active facet normals span R^dim.
    static std::vector<QVec> extreme_points(std::size_t dim, const std::vector<QVec>& pts)
    {
        std::vector<QVec> diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
        const std::size_t r = diffs.empty() ? 0 : rank_of_vectors(diffs);
        if (r == 0) return {pts[0]};
        if (r < dim) {
            // lower-dimensional: reduce to coordinates on the affine hull
            QMat basis;
            for (const auto& d : diffs) {
                QMat test = basis;
                test.push_back(d);
                if (rank(test) > rank(basis)) basis.push_back(d);
                if (basis.size() == r) break;
            }
            std::vector<QVec> reduced;
            std::vector<QVec> cols(basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j) cols[j] = basis[j];
            for (const auto& p : pts) {
                const auto x = solve_columns(cols, p - pts[0]);
                if (!x) throw Error("polytope: point off its affine hull");
                reduced.push_back(*x);
            }
            const auto ext = extreme_points(r, reduced);
            std::vector<QVec> out;
            for (const auto& e : ext) {
                QVec v = pts[0];
                for (std::size_t j = 0; j < r; ++j) v = v + e[j] * basis[j];
                out.push_back(v);
            }
            return out;
        }
        switch (dim) {
            case 1: {
                QVec lo = pts[0], hi = pts[0];
                for (const auto& p : pts) {
                    if (p[0] < lo[0]) lo = p;
                    if (p[0] > hi[0]) hi = p;
                }
                return {lo, hi};
            }
            case 2:
                return hull::convex_hull_2d(pts);
            case 3: {
                std::vector<hull::Tri> tris;
                hull::convex_hull_3d(pts, tris);
                // facet planes active at each corner must have full rank
                struct Plane {
                    QVec n;
                    Rat c;
                };
                std::vector<Plane> planes;
                for (const auto& t : tris) {
                    const QVec& a = pts[t.v[0]];
                    QVec n = {
                        (pts[t.v[1]][1] - a[1]) * (pts[t.v[2]][2] - a[2]) -
                            (pts[t.v[1]][2] - a[2]) * (pts[t.v[2]][1] - a[1]),
                        (pts[t.v[1]][2] - a[2]) * (pts[t.v[2]][0] - a[0]) -
                            (pts[t.v[1]][0] - a[0]) * (pts[t.v[2]][2] - a[2]),
                        (pts[t.v[1]][0] - a[0]) * (pts[t.v[2]][1] - a[1]) -
                            (pts[t.v[1]][1] - a[1]) * (pts[t.v[2]][0] - a[0])};
                    n = primitive(n);
                    Plane pl{n, dot(n, a)};
                    bool seen = false;
                    for (const auto& q : planes)
                        if (q.n == pl.n && q.c == pl.c) { seen = true; break; }
                    if (!seen) planes.push_back(std::move(pl));
                }
                std::vector<QVec> corners;
                for (const auto& t : tris)
                    for (int e = 0; e < 3; ++e) corners.push_back(pts[t.v[e]]);
                sort_dedupe(corners);
                std::vector<QVec> out;
                for (const auto& c : corners) {
                    QMat active;
                    for (const auto& pl : planes)
                        if (dot(pl.n, c) == pl.c) active.push_back(pl.n);
                    if (rank(std::move(active)) == 3) out.push_back(c);
                }
                return out;
            }
            default:
                throw Error("polytope canonicalization implemented for dimension <= 3");
        }
    }

    std::size_t dim_ = 0;
    std::vector<QVec> vertices_;
};

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b)
{
    if (a.ambient_dim() != b.ambient_dim()) throw Error("minkowski sum: dimension mismatch");
    if (a.is_empty() || b.is_empty()) return Polytope::empty(a.ambient_dim());
    std::vector<QVec> pts;
    pts.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) pts.push_back(u + v);
    return Polytope::from_points(a.ambient_dim(), std::move(pts));
}

// Mixed volume of n polytopes in dimension n, normalized so that
// MV(P, ..., P) = vol(P). Inclusion-exclusion over Minkowski sums, exact.
inline Rat mixed_volume(const std::vector<Polytope>& ps)
{
    if (ps.empty()) throw Error("mixed volume of an empty list");
    const std::size_t n = ps[0].ambient_dim();
    if (ps.size() != n) throw Error("mixed volume needs exactly dim polytopes");
    for (const auto& p : ps) {
        if (p.ambient_dim() != n) throw Error("mixed volume: dimension mismatch");
        if (p.is_empty()) throw Error("mixed volume of an empty polytope");
    }
    Rat acc(0);
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        Polytope sum;
        bool first = true;
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            ++bits;
            sum = first ? ps[i] : minkowski_sum(sum, ps[i]);
            first = false;
        }
        const Rat vol = sum.volume();
        acc += (((n - bits) % 2 == 0) ? vol : -vol);
    }
    Int fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    return acc / Rat(fact);
}

}  // namespace tropadel

#endif
