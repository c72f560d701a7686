#ifndef TROPADEL_HEIGHTS_HPP
#define TROPADEL_HEIGHTS_HPP

#include "tropadel/fan.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tropadel {

// Multivariate polynomial over Q with integer exponents, sparse.
class MultiPoly {
public:
    using Exps = std::vector<int>;

    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    std::size_t nvars() const { return nvars_; }
    const std::map<Exps, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const Rat& c)
    {
        if (e.size() != nvars_) throw Error("polynomial exponent arity mismatch");
        for (int x : e)
            if (x < 0) throw Error("polynomial exponents must be nonnegative");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    long total_degree() const
    {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool is_homogeneous() const
    {
        std::optional<long> deg;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (int x : e) s += x;
            if (deg && *deg != s) return false;
            deg = s;
        }
        return true;
    }

    Rat eval(const QVec& x) const
    {
        if (x.size() != nvars_) throw Error("polynomial evaluation arity mismatch");
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

private:
    std::size_t nvars_ = 0;
    std::map<Exps, Rat> terms_;
};

// A degree-one homogeneous rational function: homogeneous numerator and
// denominator with deg num = deg den + 1, denominator nonvanishing on the
// open positive orthant (sampled at construction).
class HomogeneousRational {
public:
    HomogeneousRational(MultiPoly num, MultiPoly den, std::uint64_t seed = 0)
        : num_(std::move(num)), den_(std::move(den))
    {
        if (num_.nvars() != den_.nvars()) throw Error("numerator/denominator arity mismatch");
        if (den_.is_zero()) throw Error("denominator is zero");
        if (!num_.is_homogeneous() || !den_.is_homogeneous())
            throw Error("numerator and denominator must be homogeneous");
        if (!num_.is_zero() && num_.total_degree() != den_.total_degree() + 1)
            throw Error("degree of numerator must exceed denominator degree by one");
        // sampled nonvanishing of the denominator on the open positive orthant
        for (int s = 0; s < 50; ++s) {
            QVec x(nvars());
            for (std::size_t i = 0; i < nvars(); ++i)
                x[i] = Rat(ranged_int(splitmix64(seed + s * 131 + i), 1, 60),
                           ranged_int(splitmix64(seed + s * 137 + i), 1, 20));
            if (den_.eval(x) == 0)
                throw Error("denominator vanishes on the open positive orthant");
        }
    }

    std::size_t nvars() const { return num_.nvars(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    Rat eval(const QVec& m) const
    {
        const Rat d = den_.eval(m);
        if (d == 0) throw Error("denominator vanishes at the evaluation point");
        return num_.eval(m) / d;
    }

private:
    MultiPoly num_;
    MultiPoly den_;
};

// Exact rational evaluation at a strictly positive vector.
inline Rat eval_mu(const HomogeneousRational& mu, const QVec& m)
{
    if (m.size() != mu.nvars()) throw Error("eval_mu arity mismatch");
    for (const auto& x : m)
        if (x <= 0) throw Error("eval_mu requires a strictly positive vector");
    return mu.eval(m);
}

// Predicted coefficient of -log|s| for an arc with the given vanishing orders.
inline Rat expected_slope(const HomogeneousRational& mu, const std::vector<long>& orders)
{
    QVec m;
    for (long o : orders) {
        if (o <= 0) throw Error("arc orders must be strictly positive");
        m.push_back(Rat(o));
    }
    return eval_mu(mu, m);
}

// Continuity probe toward a coordinate face: directional limits along several
// approach paths must agree. Failure (or divergence) is data, not an error.
struct ExtensionReport {
    double max_discrepancy = 0.0;
    bool diverged = false;
    bool pass = false;
    int samples = 0;
};

namespace detail {

// Coefficients of t^k of P restricted to the path base + t * dir.
inline std::map<long, Rat> restrict_to_path(const MultiPoly& p, const QVec& base, const QVec& dir)
{
    std::map<long, Rat> out;
    for (const auto& [e, c] : p.terms()) {
        std::map<long, Rat> prod;
        prod[0] = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) {
                std::map<long, Rat> next;
                for (const auto& [deg, coef] : prod) {
                    if (base[i] != 0) next[deg] += coef * base[i];
                    if (dir[i] != 0) next[deg + 1] += coef * dir[i];
                }
                prod.swap(next);
            }
        }
        for (const auto& [deg, coef] : prod) {
            out[deg] += coef;
            if (out[deg] == 0) out.erase(deg);
        }
    }
    return out;
}

// Exact one-sided limit of num/den along base + t * dir as t -> 0+;
// empty when the value diverges (or the denominator vanishes identically).
inline std::optional<Rat> directional_limit(const HomogeneousRational& mu, const QVec& base,
                                            const QVec& dir)
{
    const auto p = restrict_to_path(mu.num(), base, dir);
    const auto q = restrict_to_path(mu.den(), base, dir);
    if (q.empty()) return std::nullopt;
    const long kq = q.begin()->first;
    if (p.empty()) return Rat(0);
    const long kp = p.begin()->first;
    if (kp < kq) return std::nullopt;  // blows up
    if (kp > kq) return Rat(0);
    return p.begin()->second / q.begin()->second;
}

}  // namespace detail

inline ExtensionReport check_boundary_extension(const HomogeneousRational& mu,
                                                const std::vector<int>& face, int samples,
                                                std::uint64_t seed = 0)
{
    const std::size_t r = mu.nvars();
    for (int i : face)
        if (i < 0 || static_cast<std::size_t>(i) >= r) throw Error("face index out of range");
    std::set<int> face_set(face.begin(), face.end());

    ExtensionReport rep;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        QVec base(r, Rat(0));
        for (std::size_t i = 0; i < r; ++i) {
            if (face_set.count(static_cast<int>(i))) continue;
            base[i] = Rat(ranged_int(splitmix64(seed + s * 97 + i), 1, 40),
                          ranged_int(splitmix64(seed + s * 101 + i), 1, 10));
        }
        std::vector<Rat> limits;
        for (int k = 0; k < 3; ++k) {
            QVec dir(r);
            for (std::size_t i = 0; i < r; ++i)
                dir[i] = Rat(ranged_int(splitmix64(seed + s * 911 + k * 131 + i), 1, 30),
                             ranged_int(splitmix64(seed + s * 919 + k * 139 + i), 1, 10));
            const auto lim = detail::directional_limit(mu, base, dir);
            if (!lim) {
                rep.diverged = true;
                continue;
            }
            limits.push_back(*lim);
        }
        for (std::size_t i = 0; i < limits.size(); ++i)
            for (std::size_t j = i + 1; j < limits.size(); ++j)
                rep.max_discrepancy =
                    std::max(rep.max_discrepancy, std::abs(to_double(limits[i] - limits[j])));
    }
    rep.pass = !rep.diverged && rep.max_discrepancy <= 1e-6;
    return rep;
}

// Least-squares slope of h against x = -log|s|, with the sup of |h - slope x|
// as the O(1) bound. Requires at least 8 samples spanning three decades of x.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double o1_bound = 0.0;
};

inline SlopeFit fit_slope(const std::vector<std::pair<double, double>>& samples)
{
    if (samples.size() < 8) throw Error("slope fit needs at least 8 samples");
    std::vector<double> xs, hs;
    double xmin = 1e300, xmax = 0;
    for (const auto& [mod, h] : samples) {
        if (!(mod > 0.0 && mod < 1.0)) throw Error("sample moduli must lie in (0,1)");
        const double x = -std::log(mod);
        xs.push_back(x);
        hs.push_back(h);
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    if (xmax < 1000.0 * xmin)
        throw Error("insufficient dynamic range: -log|s| must span three decades");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sh = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sh += hs[i];
    }
    const double mx = sx / n, mh = sh / n;
    double sxx = 0, sxh = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxh += (xs[i] - mx) * (hs[i] - mh);
    }
    SlopeFit fit;
    fit.slope = sxx == 0 ? 0.0 : sxh / sxx;
    fit.intercept = mh - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.o1_bound = std::max(fit.o1_bound, std::abs(hs[i] - fit.slope * xs[i]));
    return fit;
}

// Continuous function on the dual complex, evaluated conically on the
// positive orthant: simplices are vertex subsets, values are linear in the
// coordinates unless a per-simplex evaluator is attached.
class SimplexFunction {
public:
    struct Simplex {
        std::vector<int> vertices;
        // optional evaluator on barycentric coordinates of the normalized point
        std::function<double(const std::vector<double>&)> oracle;
    };

    SimplexFunction(std::size_t r, std::vector<double> vertex_values, std::vector<Simplex> simplices)
        : r_(r), vertex_values_(std::move(vertex_values)), simplices_(std::move(simplices))
    {
        if (vertex_values_.size() != r_) throw Error("vertex value count mismatch");
        for (const auto& s : simplices_)
            for (int v : s.vertices)
                if (v < 0 || static_cast<std::size_t>(v) >= r_) throw Error("simplex vertex out of range");
    }

    // Full simplex on r vertices with linear interpolation of vertex values.
    static SimplexFunction linear(std::vector<double> vertex_values)
    {
        const std::size_t r = vertex_values.size();
        Simplex s;
        for (std::size_t i = 0; i < r; ++i) s.vertices.push_back(static_cast<int>(i));
        return SimplexFunction(r, std::move(vertex_values), {std::move(s)});
    }

    std::size_t arity() const { return r_; }

    double eval(const std::vector<double>& x) const
    {
        if (x.size() != r_) throw Error("simplex function arity mismatch");
        double total = 0;
        for (double xi : x) {
            if (xi < 0) throw Error("simplex function needs nonnegative coordinates");
            total += xi;
        }
        if (total == 0) return 0.0;
        const Simplex* home = nullptr;
        for (const auto& s : simplices_) {
            bool ok = true;
            for (std::size_t i = 0; i < r_; ++i) {
                if (x[i] > 0 && std::find(s.vertices.begin(), s.vertices.end(), static_cast<int>(i)) ==
                                    s.vertices.end()) {
                    ok = false;
                    break;
                }
            }
            if (ok) { home = &s; break; }
        }
        if (!home) throw Error("point support is not contained in any simplex");
        if (home->oracle) {
            std::vector<double> bary;
            for (int v : home->vertices) bary.push_back(x[v] / total);
            return total * home->oracle(bary);
        }
        double acc = 0;
        for (std::size_t i = 0; i < r_; ++i) acc += x[i] * vertex_values_[i];
        return acc;
    }

    // Sampled continuity across shared faces, for oracle-backed simplices.
    double max_face_discontinuity(int samples = 200, std::uint64_t seed = 0) const
    {
        double worst = 0;
        for (std::size_t a = 0; a < simplices_.size(); ++a) {
            for (std::size_t b = a + 1; b < simplices_.size(); ++b) {
                std::vector<int> shared;
                for (int v : simplices_[a].vertices)
                    if (std::find(simplices_[b].vertices.begin(), simplices_[b].vertices.end(), v) !=
                        simplices_[b].vertices.end())
                        shared.push_back(v);
                if (shared.empty()) continue;
                for (int s = 0; s < samples; ++s) {
                    std::vector<double> x(r_, 0.0);
                    double total = 0;
                    for (std::size_t i = 0; i < shared.size(); ++i) {
                        const double u =
                            1 + static_cast<double>(splitmix64(seed + s * 131 + i) % 1000) / 100.0;
                        x[shared[i]] = u;
                        total += u;
                    }
                    const double va = eval_on(simplices_[a], x);
                    const double vb = eval_on(simplices_[b], x);
                    worst = std::max(worst, std::abs(va - vb));
                }
            }
        }
        return worst;
    }

private:
    double eval_on(const Simplex& s, const std::vector<double>& x) const
    {
        double total = 0;
        for (double xi : x) total += xi;
        if (s.oracle) {
            std::vector<double> bary;
            for (int v : s.vertices) bary.push_back(x[v] / total);
            return total * s.oracle(bary);
        }
        double acc = 0;
        for (std::size_t i = 0; i < r_; ++i) acc += x[i] * vertex_values_[i];
        return acc;
    }

    std::size_t r_;
    std::vector<double> vertex_values_;
    std::vector<Simplex> simplices_;
};

// Residual test for Green-function asymptotics: per radius R, the sup over
// samples with min(-log|z_i|) >= R of |g - f(-log|z|)| / sum(-log|z_i|);
// passes when the residuals decrease toward zero and end below 0.01.
struct ResidualReport {
    std::vector<std::pair<double, double>> residuals;  // (radius, residual)
    bool pass = false;
};

struct GreenSample {
    std::vector<double> moduli;  // |z_i| in (0,1)
    double g = 0.0;
};

inline ResidualReport green_residual(const SimplexFunction& f, const std::vector<GreenSample>& samples,
                                     const std::vector<double>& radius_schedule)
{
    ResidualReport rep;
    if (radius_schedule.empty()) throw Error("empty radius schedule");
    for (std::size_t i = 0; i + 1 < radius_schedule.size(); ++i)
        if (radius_schedule[i] >= radius_schedule[i + 1])
            throw Error("radius schedule must be strictly increasing");
    for (double radius : radius_schedule) {
        double worst = -1;
        for (const auto& s : samples) {
            if (s.moduli.size() != f.arity()) throw Error("sample arity mismatch");
            std::vector<double> x;
            double minx = 1e300, sum = 0;
            for (double m : s.moduli) {
                if (!(m > 0 && m < 1)) throw Error("sample moduli must lie in (0,1)");
                const double xi = -std::log(m);
                x.push_back(xi);
                minx = std::min(minx, xi);
                sum += xi;
            }
            if (minx < radius) continue;
            worst = std::max(worst, std::abs(s.g - f.eval(x)) / sum);
        }
        if (worst < 0) throw Error("empty sample bucket at radius " + std::to_string(radius));
        rep.residuals.emplace_back(radius, worst);
    }
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < rep.residuals.size(); ++i)
        if (rep.residuals[i + 1].second > rep.residuals[i].second + 1e-9) decreasing = false;
    rep.pass = decreasing && rep.residuals.back().second <= 0.01;
    return rep;
}

}  // namespace tropadel

#endif
