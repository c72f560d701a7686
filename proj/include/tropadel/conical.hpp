#ifndef TROPADEL_CONICAL_HPP
#define TROPADEL_CONICAL_HPP

#include "tropadel/fan.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace tropadel {

// Piecewise-linear conical function: a simplicial fan with one rational value
// per ray, extended linearly on each maximal cone. f(lambda a) = lambda f(a)
// is forced by the representation.
class PLConical {
public:
    PLConical() = default;

    PLConical(Fan fan, std::vector<Rat> ray_values) : fan_(std::move(fan)), values_(std::move(ray_values))
    {
        if (!fan_.is_simplicial()) throw Error("PL conical function requires a simplicial fan");
        if (values_.size() != fan_.rays().size())
            throw Error("ray value count does not match fan rays");
    }

    const Fan& fan() const { return fan_; }
    const std::vector<Rat>& ray_values() const { return values_; }

    Rat value_at_ray(int idx) const { return values_[idx]; }

    // Exact barycentric-linear value on the simplicial cone containing `a`.
    Rat eval(const QVec& a) const
    {
        if (is_zero(a)) return Rat(0);
        const int k = fan_.locate(a);
        if (k < 0) throw Error("point outside the support of the function's fan");
        return eval_on_cone(static_cast<std::size_t>(k), a);
    }

    Rat eval_on_cone(std::size_t k, const QVec& a) const
    {
        const auto& c = fan_.max_cones()[k];
        if (fan_.dim() == 2 && c.size() == 2) {
            const QVec& v1 = fan_.rays()[c[0]];
            const QVec& v2 = fan_.rays()[c[1]];
            const Rat det = v1[0] * v2[1] - v1[1] * v2[0];
            const Rat l1 = (a[0] * v2[1] - a[1] * v2[0]) / det;
            const Rat l2 = (v1[0] * a[1] - v1[1] * a[0]) / det;
            if (l1 < 0 || l2 < 0) throw Error("point not in located cone");
            return l1 * values_[c[0]] + l2 * values_[c[1]];
        }
        std::vector<QVec> cols;
        for (int idx : c) cols.push_back(fan_.rays()[idx]);
        const auto lambda = solve_columns(cols, a);
        if (!lambda) throw Error("point not in located cone");
        Rat v(0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if ((*lambda)[i] < 0) throw Error("point not in located cone");
            v += (*lambda)[i] * values_[c[i]];
        }
        return v;
    }

    // Linear functional w with <w, v_i> = value_i on the rays of cone k.
    // Unique for full-dimensional cones; free components are set to zero.
    QVec cone_functional(std::size_t k) const
    {
        const auto& c = fan_.max_cones()[k];
        const std::size_t n = fan_.dim();
        std::vector<QVec> cols(n, QVec(c.size(), Rat(0)));
        QVec rhs(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            const QVec& v = fan_.rays()[c[i]];
            for (std::size_t j = 0; j < n; ++j) cols[j][i] = v[j];
            rhs[i] = values_[c[i]];
        }
        const auto w = solve_columns(cols, rhs);
        if (!w) throw Error("inconsistent ray values on a cone");
        return *w;
    }

    bool is_zero_function() const
    {
        for (const auto& v : values_)
            if (v != 0) return false;
        return true;
    }

    // True iff f >= 0 on its support; valid because f is linear per simplicial cone.
    bool is_effective() const
    {
        for (const auto& v : values_)
            if (v < 0) return false;
        return true;
    }

private:
    Fan fan_;
    std::vector<Rat> values_;
};

namespace detail {

inline PLConical rebuild_on(const Fan& fan, const std::function<Rat(const QVec&)>& f)
{
    std::vector<Rat> vals;
    vals.reserve(fan.rays().size());
    for (const auto& r : fan.rays()) vals.push_back(f(r));
    return PLConical(fan, std::move(vals));
}

}  // namespace detail

inline PLConical scale(const PLConical& f, const Rat& c)
{
    std::vector<Rat> vals = f.ray_values();
    for (auto& v : vals) v *= c;
    return PLConical(f.fan(), std::move(vals));
}

inline PLConical add(const PLConical& f, const PLConical& g)
{
    if (f.fan().same_rays_and_cones(g.fan())) {
        std::vector<Rat> vals = f.ray_values();
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += g.ray_values()[i];
        return PLConical(f.fan(), std::move(vals));
    }
    Fan r = simplicialize(common_refinement(f.fan(), g.fan()));
    return detail::rebuild_on(r, [&](const QVec& v) { return f.eval(v) + g.eval(v); });
}

inline PLConical subtract(const PLConical& f, const PLConical& g)
{
    return add(f, scale(g, Rat(-1)));
}

// Pointwise minimum. The common refinement is further refined along the locus
// f - g = 0 so the result is genuinely linear on every cone of its fan.
inline PLConical min(const PLConical& f, const PLConical& g)
{
    Fan base = simplicialize(common_refinement(f.fan(), g.fan()));
    PLConical h = detail::rebuild_on(base, [&](const QVec& v) { return f.eval(v) - g.eval(v); });

    std::vector<std::vector<QVec>> pieces;
    for (std::size_t k = 0; k < base.max_cones().size(); ++k) {
        const auto& c = base.max_cones()[k];
        bool has_pos = false, has_neg = false;
        for (int idx : c) {
            const int s = sign(h.value_at_ray(idx));
            if (s > 0) has_pos = true;
            if (s < 0) has_neg = true;
        }
        if (!has_pos || !has_neg) {
            std::vector<QVec> rays;
            for (int idx : c) rays.push_back(base.rays()[idx]);
            pieces.push_back(std::move(rays));
            continue;
        }
        const QVec w = h.cone_functional(k);
        for (const QVec& normal : {w, negate(w)}) {
            Cone part = base.cone(k).intersect_halfspace(normal);
            if (part.cone_dim() < base.cone(k).cone_dim()) continue;
            for (const auto& simplex : part.triangulation()) pieces.push_back(simplex);
        }
    }
    Fan refined = fan_from_cone_rays(base.dim(), pieces, base.is_complete());
    return detail::rebuild_on(refined, [&](const QVec& v) { return rat_min(f.eval(v), g.eval(v)); });
}

// sup |f|/g over the common support. Linear-fractional functions attain their
// extrema at rays of the common refinement, so the maximum is exact.
// An empty value means the ratio is unbounded.
struct SupRatio {
    std::optional<Rat> value;  // nullopt = infinity
    QVec witness;              // ray attaining (or breaking) the bound

    bool finite() const { return value.has_value(); }
    bool leq(const Rat& bound) const { return finite() && *value <= bound; }
};

inline SupRatio sup_ratio(const PLConical& f, const PLConical& g)
{
    Fan r = common_refinement(f.fan(), g.fan());
    SupRatio out;
    out.value = Rat(0);
    out.witness = qvec_zero(r.dim());
    for (const auto& v : r.rays()) {
        const Rat fv = f.eval(v);
        const Rat gv = g.eval(v);
        if (gv == 0) {
            if (fv != 0) return SupRatio{std::nullopt, v};
            continue;
        }
        if (gv < 0) throw Error("sup_ratio requires g >= 0 on its support");
        const Rat ratio = rat_abs(fv) / gv;
        if (ratio > *out.value) {
            out.value = ratio;
            out.witness = v;
        }
    }
    return out;
}

// Contract for an externally supplied continuous conical function; values are
// double precision, homogeneity of degree one is spot-checked.
struct ConicalOracle {
    std::function<double(const QVec&)> eval;
};

inline bool oracle_homogeneity_ok(const ConicalOracle& o, std::size_t dim, std::uint64_t seed = 0)
{
    const Rat lambdas[] = {Rat(2), Rat(3), Rat(1, 2), Rat(7, 4)};
    for (int s = 0; s < 16; ++s) {
        QVec a(dim);
        bool zero = true;
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = Rat(ranged_int(splitmix64(seed ^ (s * 1009 + i)), -5, 5));
            if (a[i] != 0) zero = false;
        }
        if (zero) a[0] = 1;
        const double base = o.eval(a);
        for (const Rat& lam : lambdas) {
            const double expect = to_double(lam) * base;
            const double got = o.eval(lam * a);
            if (std::abs(got - expect) > 1e-12 * std::max(1.0, std::abs(expect))) return false;
        }
    }
    return true;
}

// Rational sample points on the cross-section of each maximal cone (rays
// normalized to the L1 sphere), on a barycentric grid. Grid resolution is
// chosen so the total is close to `target_total`.
inline std::vector<QVec> cross_section_grid(const Fan& fan, int target_total)
{
    std::vector<QVec> pts;
    const std::size_t ncones = fan.max_cones().size();
    if (ncones == 0) return pts;
    const long per_cone = std::max<long>(1, target_total / static_cast<long>(ncones));
    for (const auto& c : fan.max_cones()) {
        std::vector<QVec> u;
        for (int idx : c) {
            const QVec& v = fan.rays()[idx];
            Rat l1(0);
            for (const auto& x : v) l1 += rat_abs(x);
            u.push_back((Rat(1) / l1) * v);
        }
        if (u.size() == 1) {
            pts.push_back(u[0]);
        } else if (u.size() == 2) {
            const long m = per_cone;
            for (long j = 0; j <= m; ++j) {
                const Rat t(j, m);
                pts.push_back((Rat(1) - t) * u[0] + t * u[1]);
            }
        } else if (u.size() == 3) {
            long m = 1;
            while ((m + 1) * (m + 2) / 2 < per_cone) ++m;
            for (long i = 0; i <= m; ++i)
                for (long j = 0; i + j <= m; ++j) {
                    const Rat a(i, m), b(j, m), c3 = Rat(1) - a - b;
                    pts.push_back(a * u[0] + b * u[1] + c3 * u[2]);
                }
        } else {
            // higher-dimensional cones: sample rays and pairwise midpoints
            pts.insert(pts.end(), u.begin(), u.end());
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = i + 1; j < u.size(); ++j)
                    pts.push_back(Rat(1, 2) * (u[i] + u[j]));
        }
    }
    return pts;
}

struct ApproxReport {
    int depth = 0;
    double deviation_estimate = 0.0;
    int samples = 0;
};

struct ApproxResult {
    PLConical fn;
    ApproxReport report;
};

inline double max_deviation_on_grid(const PLConical& f, const ConicalOracle& o,
                                    const std::vector<QVec>& grid, int jobs = 1)
{
    std::vector<double> devs(grid.size(), 0.0);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            devs[i] = std::abs(to_double(f.eval(grid[i])) - o.eval(grid[i]));
    };
    if (jobs <= 1 || grid.size() < 256) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (grid.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            const std::size_t lo = std::min(grid.size(), t * chunk);
            const std::size_t hi = std::min(grid.size(), lo + chunk);
            if (lo < hi) threads.emplace_back(work, lo, hi);
        }
        for (auto& th : threads) th.join();
    }
    double m = 0.0;
    for (double d : devs) m = std::max(m, d);
    return m;
}

// Core sampling step on an already subdivided fan: oracle values at the
// primitive rays rounded to denominator 2^(32+depth), deviation measured on
// the supplied fixed grid so reports are comparable across depths.
inline ApproxResult approximate_on(const ConicalOracle& o, const Fan& subdivided, int depth,
                                   const std::vector<QVec>& grid, int jobs = 1)
{
    std::vector<Rat> vals;
    vals.reserve(subdivided.rays().size());
    for (const auto& r : subdivided.rays())
        vals.push_back(rat_from_double_dyadic(o.eval(r), 32 + static_cast<unsigned>(depth)));
    PLConical f(subdivided, std::move(vals));
    ApproxResult res{std::move(f), {depth, 0.0, static_cast<int>(grid.size())}};
    res.report.deviation_estimate = max_deviation_on_grid(res.fn, o, grid, jobs);
    return res;
}

// Uniform approximation of a continuous conical oracle: barycentric
// subdivision of the reference fan iterated `depth` times, with dyadic
// rounding of the sampled ray values. The rounding denominator grows with the
// depth so quantization never caps the convergence.
inline ApproxResult approximate(const ConicalOracle& o, const Fan& reference, int depth,
                                int grid_target = 10000, int jobs = 1)
{
    if (depth < 0) throw Error("approximate: depth must be nonnegative");
    if (!reference.is_complete() || !reference.is_simplicial())
        throw Error("approximate: reference fan must be complete and simplicial");
    if (!oracle_homogeneity_ok(o, reference.dim()))
        throw Error("oracle fails the degree-one homogeneity spot-check");
    const Fan fan = barycentric_subdivision_iterated(reference, depth);
    const auto grid = cross_section_grid(reference, grid_target);
    return approximate_on(o, fan, depth, grid, jobs);
}

}  // namespace tropadel

#endif
