#ifndef TROPADEL_FAN_HPP
#define TROPADEL_FAN_HPP

#include "tropadel/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace tropadel {

// Perfect pairing M x N -> Q under the fixed dual bases.
inline Rat lattice_pair(const QVec& m, const QVec& a)
{
    if (m.size() != a.size()) throw Error("lattice pairing: dimension mismatch");
    return dot(m, a);
}

// Deterministic per-index randomness so sampled checks are reproducible and
// independent of worker count.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline long ranged_int(std::uint64_t h, long lo, long hi)
{
    return lo + static_cast<long>(h % static_cast<std::uint64_t>(hi - lo + 1));
}

// A rational polyhedral fan, stored by primitive integer rays and maximal
// cones as ray-index sets. Immutable; copies share the representation.
class Fan {
public:
    Fan() = default;

    Fan(std::size_t dim, std::vector<QVec> rays, std::vector<std::vector<int>> max_cones,
        bool declared_complete)
    {
        auto impl = std::make_shared<Impl>();
        impl->dim = dim;
        impl->declared_complete = declared_complete;
        for (auto& r : rays) {
            if (r.size() != dim) throw Error("fan ray has wrong dimension");
            if (!is_primitive_integer(r)) throw Error("fan ray is not a primitive integer vector");
            impl->rays.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < impl->rays.size(); ++i)
            for (std::size_t j = i + 1; j < impl->rays.size(); ++j)
                if (impl->rays[i] == impl->rays[j]) throw Error("duplicate ray in fan");
        for (auto& c : max_cones) {
            std::sort(c.begin(), c.end());
            if (std::unique(c.begin(), c.end()) != c.end())
                throw Error("repeated ray index in cone");
            for (int idx : c)
                if (idx < 0 || static_cast<std::size_t>(idx) >= impl->rays.size())
                    throw Error("cone ray index out of range");
            if (c.empty()) throw Error("empty cone in fan");
            impl->max_cones.push_back(std::move(c));
        }
        // Canonicalize each cone and require the declared rays to be its
        // extreme rays; this backs the values-on-rays representation.
        for (const auto& c : impl->max_cones) {
            std::vector<QVec> gens;
            for (int idx : c) gens.push_back(impl->rays[idx]);
            Cone cone = Cone::from_rays(dim, gens);
            std::vector<QVec> declared = gens;
            sort_dedupe(declared);
            if (cone.rays() != declared)
                throw Error("cone rays are not the extreme rays of their span");
            impl->cones.push_back(std::move(cone));
        }
        impl->complete_certificate = impl->compute_complete();
        impl->build_angular_index();
        impl_ = std::move(impl);
    }

    bool valid() const { return impl_ != nullptr; }
    std::size_t dim() const { return impl().dim; }
    const std::vector<QVec>& rays() const { return impl().rays; }
    const std::vector<std::vector<int>>& max_cones() const { return impl().max_cones; }
    const Cone& cone(std::size_t i) const { return impl().cones[i]; }
    bool declared_complete() const { return impl().declared_complete; }

    int ray_index(const QVec& r) const
    {
        const auto& rays = impl().rays;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (rays[i] == r) return static_cast<int>(i);
        return -1;
    }

    bool is_simplicial() const
    {
        for (const auto& c : impl().cones)
            if (!c.is_simplicial()) return false;
        return true;
    }

    // Exact completeness certificate: every facet of every maximal cone is
    // shared by exactly two maximal cones.
    bool is_complete() const { return impl().complete_certificate; }

    // Index of a maximal cone containing `a`, or -1. Ties on faces may return
    // either neighbor; all consumers are consistent across faces.
    int locate(const QVec& a) const
    {
        const Impl& im = impl();
        if (a.size() != im.dim) throw Error("locate: dimension mismatch");
        if (im.angular.enabled && !is_zero(a)) {
            const int k = im.locate_angular(a);
            if (k >= 0) return k;
        }
        for (std::size_t i = 0; i < im.cones.size(); ++i)
            if (im.cones[i].contains(a)) return static_cast<int>(i);
        return -1;
    }

    bool supports(const QVec& a) const { return locate(a) >= 0; }

    bool same_rays_and_cones(const Fan& other) const
    {
        return dim() == other.dim() && rays() == other.rays() && max_cones() == other.max_cones();
    }

    // Full structural validation; throws with a description of the first
    // violation found. Construction already canonicalizes cones, so this
    // checks the fan axioms and the declared flags.
    void validate() const
    {
        const Impl& im = impl();
        std::set<int> used;
        for (const auto& c : im.max_cones) used.insert(c.begin(), c.end());
        if (used.size() != im.rays.size()) throw Error("fan has rays not used by any cone");
        for (std::size_t i = 0; i < im.cones.size(); ++i) {
            for (std::size_t j = i + 1; j < im.cones.size(); ++j) {
                if (im.max_cones[i] == im.max_cones[j]) throw Error("duplicate maximal cone");
                check_face_fit(im.cones[i], im.cones[j]);
            }
        }
        if (im.declared_complete && !im.complete_certificate)
            throw Error("fan declared complete but completeness certificate fails");
    }

    const Fan& self() const { return *this; }

private:
    struct AngularIndex {
        bool enabled = false;
        std::vector<int> order;                 // ray indices sorted by angle
        std::vector<int> sector_cone;           // cone index per sector [order[i], order[i+1])
    };

    struct Impl {
        std::size_t dim = 0;
        std::vector<QVec> rays;
        std::vector<std::vector<int>> max_cones;
        std::vector<Cone> cones;
        bool declared_complete = false;
        bool complete_certificate = false;
        AngularIndex angular;

        bool compute_complete() const
        {
            if (cones.empty()) return false;
            if (dim == 1) {
                bool pos = false, neg = false;
                for (const auto& c : max_cones)
                    for (int idx : c) (rays[idx][0] > 0 ? pos : neg) = true;
                return pos && neg;
            }
            std::map<std::vector<QVec>, int> facet_count;
            for (const auto& c : cones) {
                for (const auto& f : c.facets()) {
                    std::vector<QVec> key = f.rays;
                    sort_dedupe(key);
                    ++facet_count[key];
                }
            }
            for (const auto& [key, n] : facet_count)
                if (n != 2) return false;
            return true;
        }

        // Angular order on rays enables O(log) point location on complete
        // two-dimensional fans whose cones are exactly adjacent ray pairs.
        static int half_plane(const QVec& v)
        {
            if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
            return 1;
        }

        static Rat cross2(const QVec& u, const QVec& v) { return u[0] * v[1] - u[1] * v[0]; }

        static bool angle_less(const QVec& u, const QVec& v)
        {
            const int hu = half_plane(u), hv = half_plane(v);
            if (hu != hv) return hu < hv;
            return cross2(u, v) > 0;
        }

        void build_angular_index()
        {
            angular.enabled = false;
            if (dim != 2 || !complete_certificate) return;
            for (const auto& c : max_cones)
                if (c.size() != 2) return;
            std::vector<int> order(rays.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return angle_less(rays[i], rays[j]); });
            std::map<std::pair<int, int>, int> pair_to_cone;
            for (std::size_t k = 0; k < max_cones.size(); ++k) {
                pair_to_cone[{max_cones[k][0], max_cones[k][1]}] = static_cast<int>(k);
            }
            std::vector<int> sector(order.size(), -1);
            for (std::size_t i = 0; i < order.size(); ++i) {
                int a = order[i];
                int b = order[(i + 1) % order.size()];
                auto it = pair_to_cone.find({std::min(a, b), std::max(a, b)});
                if (it == pair_to_cone.end()) return;  // not angularly contiguous
                sector[i] = it->second;
            }
            angular.order = std::move(order);
            angular.sector_cone = std::move(sector);
            angular.enabled = true;
        }

        int locate_angular(const QVec& a) const
        {
            const auto& ord = angular.order;
            const std::size_t k = ord.size();
            // Binary search for the last ray with angle <= angle(a), circularly.
            if (angle_less(a, rays[ord[0]])) {
                // wraps into the final sector
                return angular.sector_cone[k - 1];
            }
            std::size_t lo = 0, hi = k - 1;
            while (lo < hi) {
                const std::size_t mid = (lo + hi + 1) / 2;
                if (angle_less(a, rays[ord[mid]])) hi = mid - 1;
                else lo = mid;
            }
            return angular.sector_cone[lo];
        }
    };

    const Impl& impl() const
    {
        if (!impl_) throw Error("use of empty fan");
        return *impl_;
    }

    static void check_face_fit(const Cone& a, const Cone& b)
    {
        Cone inter = a.intersect(b);
        if (inter.rays().empty()) return;  // cones meet only at the origin
        QVec x = qvec_zero(a.ambient_dim());
        for (const auto& r : inter.rays()) x = x + r;
        if (minimal_face_rays(a, x) != inter.rays() || minimal_face_rays(b, x) != inter.rays())
            throw Error("maximal cones do not intersect in a common face");
    }

    // Extreme rays of the minimal face of `c` containing the point x in c.
    static std::vector<QVec> minimal_face_rays(const Cone& c, const QVec& x)
    {
        std::vector<QVec> out;
        const auto& desc = c.inequality_description();
        std::vector<const QVec*> active;
        for (const auto& h : desc.ineqs)
            if (dot(h, x) == 0) active.push_back(&h);
        for (const auto& r : c.rays()) {
            bool on_face = true;
            for (const QVec* h : active)
                if (dot(*h, r) != 0) { on_face = false; break; }
            if (on_face) out.push_back(r);
        }
        sort_dedupe(out);
        return out;
    }

    std::shared_ptr<const Impl> impl_;
};

// Assembles a fan from a list of cones given by explicit ray vectors.
inline Fan fan_from_cone_rays(std::size_t dim, const std::vector<std::vector<QVec>>& cone_rays,
                              bool complete)
{
    std::vector<QVec> rays;
    std::map<QVec, int, bool (*)(const QVec&, const QVec&)> index(lex_less);
    std::vector<std::vector<int>> cones;
    for (const auto& cr : cone_rays) {
        std::vector<int> c;
        for (const auto& r : cr) {
            QVec p = primitive(r);
            auto it = index.find(p);
            int idx;
            if (it == index.end()) {
                idx = static_cast<int>(rays.size());
                index.emplace(p, idx);
                rays.push_back(p);
            } else {
                idx = it->second;
            }
            c.push_back(idx);
        }
        std::sort(c.begin(), c.end());
        cones.push_back(std::move(c));
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    return Fan(dim, std::move(rays), std::move(cones), complete);
}

// Sampled exact support-equality check (deterministic in the seed). Complete
// fans short-circuit; otherwise membership of random integer directions must
// agree in both fans.
inline bool support_equal_sampled(const Fan& f1, const Fan& f2, std::uint64_t seed = 0,
                                  int samples = 200)
{
    if (f1.dim() != f2.dim()) return false;
    if (f1.is_complete() && f2.is_complete()) return true;
    if (f1.is_complete() != f2.is_complete()) return false;
    for (int s = 0; s < samples; ++s) {
        QVec a(f1.dim());
        for (std::size_t i = 0; i < f1.dim(); ++i)
            a[i] = Rat(ranged_int(splitmix64(seed * 7919 + s * 131 + i), -9, 9));
        if (f1.supports(a) != f2.supports(a)) return false;
    }
    for (const auto& r : f1.rays())
        if (!f2.supports(r)) return false;
    for (const auto& r : f2.rays())
        if (!f1.supports(r)) return false;
    return true;
}

namespace detail {

// True if every maximal cone of `fine` lies inside some maximal cone of `coarse`.
inline bool refines(const Fan& fine, const Fan& coarse)
{
    for (const auto& c : fine.max_cones()) {
        QVec interior = qvec_zero(fine.dim());
        for (int idx : c) interior = interior + fine.rays()[idx];
        const int k = coarse.locate(interior);
        if (k < 0) return false;
        bool inside = true;
        for (int idx : c)
            if (!coarse.cone(k).contains(fine.rays()[idx])) { inside = false; break; }
        if (!inside) return false;
    }
    return true;
}

}  // namespace detail

// Common refinement: the fan whose maximal cones are the full-dimensional
// pairwise intersections. Both inputs' piecewise-linear functions become
// linear on every returned cone.
inline Fan common_refinement(const Fan& f1, const Fan& f2, std::uint64_t seed = 0)
{
    if (f1.dim() != f2.dim()) throw Error("common refinement: dimension mismatch");
    if (!support_equal_sampled(f1, f2, seed)) throw Error("common refinement: support mismatch");
    if (detail::refines(f2, f1)) return f2;
    if (detail::refines(f1, f2)) return f1;

    std::vector<std::vector<QVec>> pieces;
    std::size_t max_dim = 0;
    std::vector<Cone> inters;
    for (std::size_t i = 0; i < f1.max_cones().size(); ++i) {
        for (std::size_t j = 0; j < f2.max_cones().size(); ++j) {
            Cone c = f1.cone(i).intersect(f2.cone(j));
            const std::size_t d = c.cone_dim();
            if (d == 0) continue;
            max_dim = std::max(max_dim, d);
            inters.push_back(std::move(c));
        }
    }
    for (const auto& c : inters)
        if (c.cone_dim() == max_dim) pieces.push_back(c.rays());
    return fan_from_cone_rays(f1.dim(), pieces, f1.is_complete() && f2.is_complete());
}

// Simplicial refinement by stellar subdivision at barycenters of
// non-simplicial maximal cones. Same support, original rays preserved.
inline Fan simplicialize(const Fan& f)
{
    if (f.is_simplicial()) return f;
    std::vector<std::vector<QVec>> cone_rays;
    for (std::size_t i = 0; i < f.max_cones().size(); ++i) cone_rays.push_back(f.cone(i).rays());

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::vector<QVec>> next;
        for (const auto& cr : cone_rays) {
            Cone c = Cone::trusted(f.dim(), cr);
            if (c.is_simplicial()) {
                next.push_back(cr);
                continue;
            }
            changed = true;
            QVec bary = qvec_zero(f.dim());
            for (const auto& r : c.rays()) bary = bary + r;
            bary = primitive(bary);
            for (const auto& facet : c.facets()) {
                std::vector<QVec> piece = facet.rays;
                piece.push_back(bary);
                next.push_back(std::move(piece));
            }
        }
        cone_rays.swap(next);
    }
    return fan_from_cone_rays(f.dim(), cone_rays, f.declared_complete() || f.is_complete());
}

// One round of barycentric subdivision of a simplicial fan: each maximal cone
// splits along flags of its faces. Rays gain the primitive face barycenters.
inline Fan barycentric_subdivision(const Fan& f)
{
    if (!f.is_simplicial()) throw Error("barycentric subdivision requires a simplicial fan");
    std::vector<std::vector<QVec>> cone_rays;
    for (const auto& c : f.max_cones()) {
        std::vector<QVec> v;
        for (int idx : c) v.push_back(f.rays()[idx]);
        const std::size_t k = v.size();
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<QVec> piece;
            QVec acc = qvec_zero(f.dim());
            for (std::size_t i = 0; i < k; ++i) {
                acc = acc + v[perm[i]];
                piece.push_back(primitive(acc));
            }
            cone_rays.push_back(std::move(piece));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return fan_from_cone_rays(f.dim(), cone_rays, f.declared_complete() || f.is_complete());
}

inline Fan barycentric_subdivision_iterated(Fan f, int depth)
{
    for (int i = 0; i < depth; ++i) f = barycentric_subdivision(f);
    return f;
}

// Decides membership of `a` in the cone spanned by the given generators,
// by triangulation and exact solves; faces count as contained.
inline bool cone_contains(std::size_t dim, const std::vector<QVec>& gens, const QVec& a)
{
    return Cone::from_rays(dim, gens).contains(a);
}

}  // namespace tropadel

#endif
