#ifndef TROPADEL_TORIC_DIVISOR_HPP
#define TROPADEL_TORIC_DIVISOR_HPP

#include "tropadel/conical.hpp"

#include <vector>

namespace tropadel {

// A complete toric model: each ray corresponds to a prime boundary divisor
// with the ray's primitive generator.
class ToricModel {
public:
    explicit ToricModel(Fan fan) : fan_(std::move(fan))
    {
        if (!fan_.is_complete()) throw Error("toric model requires a complete fan");
    }

    const Fan& fan() const { return fan_; }
    std::size_t dim() const { return fan_.dim(); }
    std::size_t num_rays() const { return fan_.rays().size(); }

private:
    Fan fan_;
};

// A boundary divisor D = sum a_rho D_rho on a toric model; its restriction to
// the torus vanishes by construction.
class ToricDivisor {
public:
    ToricDivisor(ToricModel model, std::vector<Rat> coeffs)
        : model_(std::move(model)), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != model_.num_rays())
            throw Error("divisor coefficient count does not match rays");
    }

    const ToricModel& model() const { return model_; }
    const Fan& fan() const { return model_.fan(); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_effective() const
    {
        for (const auto& c : coeffs_)
            if (c < 0) return false;
        return true;
    }

    ToricDivisor operator+(const ToricDivisor& o) const
    {
        require_same_model(o);
        std::vector<Rat> c = coeffs_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
        return ToricDivisor(model_, std::move(c));
    }

    ToricDivisor scaled(const Rat& s) const
    {
        std::vector<Rat> c = coeffs_;
        for (auto& x : c) x *= s;
        return ToricDivisor(model_, std::move(c));
    }

    void require_same_model(const ToricDivisor& o) const
    {
        if (!fan().same_rays_and_cones(o.fan())) throw Error("divisors live on different models");
    }

private:
    ToricModel model_;
    std::vector<Rat> coeffs_;
};

// The supporting function of a boundary divisor: the conical function whose
// value at each primitive ray generator is the ray's coefficient (vanishing
// orders along one-parameter subgroups fix the sign convention).
inline PLConical supporting_function(const ToricDivisor& d)
{
    if (!d.fan().is_simplicial())
        throw Error("supporting function needs a simplicial fan; simplicialize the model first");
    return PLConical(d.fan(), d.coeffs());
}

// Orders of the pull-back of D under the one-parameter subgroup of a: the
// divisor on the completed line is SF_D(a) [0] + SF_D(-a) [infinity].
struct OneParamOrders {
    Rat at_zero;
    Rat at_infinity;
};

inline OneParamOrders pullback_one_param(const ToricDivisor& d, const QVec& a)
{
    const PLConical f = supporting_function(d);
    return OneParamOrders{f.eval(a), f.eval(negate(a))};
}

// A monomial arc: nonnegative vanishing orders of the arc coordinates along
// the rays of a single cone of the model.
class MonomialArc {
public:
    MonomialArc(const ToricModel& model, std::vector<int> ray_indices, std::vector<long> orders)
        : ray_indices_(std::move(ray_indices)), orders_(std::move(orders))
    {
        if (ray_indices_.size() != orders_.size()) throw Error("arc data length mismatch");
        std::vector<QVec> support_rays;
        point_ = qvec_zero(model.dim());
        for (std::size_t i = 0; i < ray_indices_.size(); ++i) {
            const int idx = ray_indices_[i];
            if (idx < 0 || static_cast<std::size_t>(idx) >= model.num_rays())
                throw Error("arc ray index out of range");
            if (orders_[i] < 0) throw Error("arc orders must be nonnegative");
            if (orders_[i] > 0) support_rays.push_back(model.fan().rays()[idx]);
            point_ = point_ + Rat(orders_[i]) * model.fan().rays()[idx];
        }
        // the nonzero orders must index rays of a single cone of the model
        bool found = support_rays.empty();
        for (std::size_t k = 0; !found && k < model.fan().max_cones().size(); ++k) {
            bool all = true;
            for (const auto& r : support_rays)
                if (!model.fan().cone(k).contains(r)) { all = false; break; }
            found = all;
        }
        if (!found) throw Error("arc support rays do not lie in a single cone of the model");
    }

    const std::vector<int>& ray_indices() const { return ray_indices_; }
    const std::vector<long>& orders() const { return orders_; }
    const QVec& point() const { return point_; }  // sum of orders times ray generators

private:
    std::vector<int> ray_indices_;
    std::vector<long> orders_;
    QVec point_;
};

// Vanishing order of the pull-back of the divisor with supporting function f
// along a monomial arc: f evaluated at sum_j m_j v_j.
inline Rat arc_order(const PLConical& f, const MonomialArc& arc)
{
    if (!f.fan().supports(arc.point()))
        throw Error("arc cone does not lie in the support of the function");
    return f.eval(arc.point());
}

// Pull-back along an integer linear map phi: N' -> N that maps every cone of
// the source fan into some cone of the target fan. Ray coefficients of the
// result are SF_D(phi(v')).
inline ToricDivisor pullback_linear(const ToricDivisor& d, const QMat& phi_rows,
                                    const ToricModel& source)
{
    const std::size_t n_target = d.fan().dim();
    const std::size_t n_source = source.dim();
    if (phi_rows.size() != n_target) throw Error("pullback map has wrong number of rows");
    for (const auto& row : phi_rows)
        if (row.size() != n_source) throw Error("pullback map has wrong number of columns");

    auto apply = [&](const QVec& v) {
        QVec out(n_target, Rat(0));
        for (std::size_t i = 0; i < n_target; ++i) out[i] = dot(phi_rows[i], v);
        return out;
    };

    // cone-compatibility: images of each source cone's rays lie in one target cone
    for (std::size_t k = 0; k < source.fan().max_cones().size(); ++k) {
        const auto& c = source.fan().max_cones()[k];
        QVec interior = qvec_zero(n_source);
        for (int idx : c) interior = interior + source.fan().rays()[idx];
        const int t = d.fan().locate(apply(interior));
        if (t < 0) throw Error("pullback map sends a cone outside the target fan");
        for (int idx : c) {
            if (!d.fan().cone(t).contains(apply(source.fan().rays()[idx])))
                throw Error("pullback map does not send each cone into a cone of the target");
        }
    }

    const PLConical sf = supporting_function(d);
    std::vector<Rat> coeffs;
    coeffs.reserve(source.num_rays());
    for (const auto& v : source.fan().rays()) coeffs.push_back(sf.eval(apply(v)));
    return ToricDivisor(source, std::move(coeffs));
}

// Arc-vanishing criterion restricted to monomial arcs: a PL conical function
// on a complete simplicial fan vanishes identically iff it vanishes on all
// rays.
inline bool is_zero_by_arcs(const PLConical& f)
{
    if (!f.fan().is_complete() || !f.fan().is_simplicial())
        throw Error("arc-vanishing criterion needs a complete simplicial fan");
    return f.is_zero_function();
}

}  // namespace tropadel

#endif
