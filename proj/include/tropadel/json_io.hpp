#ifndef TROPADEL_JSON_IO_HPP
#define TROPADEL_JSON_IO_HPP

#include "tropadel/adelic.hpp"
#include "tropadel/heights.hpp"
#include "tropadel/intersect.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace tropadel {

using Json = nlohmann::json;

// Rationals cross the wire as canonical "p/q" strings; round trips are
// bit-exact by construction.
inline Json rat_to_json(const Rat& r) { return rat_to_string(r); }

inline Rat rat_from_json(const Json& j)
{
    if (!j.is_string()) throw Error("expected a rational \"p/q\" string");
    return rat_from_string(j.get<std::string>());
}

inline Json qvec_to_json(const QVec& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_to_json(x));
    return a;
}

inline QVec qvec_from_json(const Json& j)
{
    if (!j.is_array()) throw Error("expected an array of rationals");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

inline Json fan_to_json(const Fan& f)
{
    Json j;
    j["dim"] = f.dim();
    j["rays"] = Json::array();
    for (const auto& r : f.rays()) j["rays"].push_back(qvec_to_json(r));
    j["cones"] = f.max_cones();
    j["complete"] = f.declared_complete();
    return j;
}

inline Fan fan_from_json(const Json& j)
{
    if (!j.contains("dim") || !j.contains("rays") || !j.contains("cones"))
        throw Error("fan JSON needs dim, rays, cones");
    std::vector<QVec> rays;
    for (const auto& r : j.at("rays")) rays.push_back(qvec_from_json(r));
    std::vector<std::vector<int>> cones = j.at("cones").get<std::vector<std::vector<int>>>();
    const bool complete = j.value("complete", false);
    return Fan(j.at("dim").get<std::size_t>(), std::move(rays), std::move(cones), complete);
}

inline Json plconical_to_json(const PLConical& f)
{
    Json j;
    j["fan"] = fan_to_json(f.fan());
    Json vals = Json::array();
    for (const auto& v : f.ray_values()) vals.push_back(rat_to_json(v));
    j["ray_values"] = vals;
    return j;
}

inline PLConical plconical_from_json(const Json& j)
{
    if (!j.contains("fan") || !j.contains("ray_values"))
        throw Error("piecewise-linear function JSON needs fan and ray_values");
    Fan fan = fan_from_json(j.at("fan"));
    std::vector<Rat> vals;
    for (const auto& v : j.at("ray_values")) vals.push_back(rat_from_json(v));
    return PLConical(std::move(fan), std::move(vals));
}

inline Json divisor_to_json(const ToricDivisor& d)
{
    Json j;
    j["model"] = fan_to_json(d.fan());
    Json coeffs = Json::array();
    for (const auto& c : d.coeffs()) coeffs.push_back(rat_to_json(c));
    j["coeffs"] = coeffs;
    return j;
}

inline ToricDivisor divisor_from_json(const Json& j)
{
    if (!j.contains("model") || !j.contains("coeffs"))
        throw Error("divisor JSON needs model and coeffs");
    ToricModel model(fan_from_json(j.at("model")));
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_from_json(c));
    return ToricDivisor(std::move(model), std::move(coeffs));
}

inline MonomialArc arc_from_json(const Json& j, const ToricModel& model)
{
    if (!j.contains("cone") || !j.contains("orders"))
        throw Error("arc JSON needs cone (ray indices) and orders");
    return MonomialArc(model, j.at("cone").get<std::vector<int>>(),
                       j.at("orders").get<std::vector<long>>());
}

inline Json point_to_json(const MonomialPoint& p)
{
    Json j;
    j["tau"] = rat_to_json(p.tau);
    j["a"] = qvec_to_json(p.a);
    j["spec"] = p.spec == CoeffKind::trivial ? "trivial" : "t-adic";
    return j;
}

inline MonomialPoint point_from_json(const Json& j)
{
    if (!j.contains("tau") || !j.contains("a")) throw Error("point JSON needs tau and a");
    const std::string spec = j.value("spec", "trivial");
    if (spec != "trivial" && spec != "t-adic") throw Error("point spec must be trivial or t-adic");
    return MonomialPoint(rat_from_json(j.at("tau")), qvec_from_json(j.at("a")),
                         spec == "trivial" ? CoeffKind::trivial : CoeffKind::t_adic);
}

// Laurent polynomial terms: {terms: [{m: [ints], coeff: ...}]} where the
// coefficient is "p/q" over the trivially valued field and
// [{e: int, c: "p/q"}, ...] over the t-adic field.
inline LaurentPoly<TrivialCoeff> trivial_poly_from_json(const Json& j, std::size_t dim)
{
    LaurentPoly<TrivialCoeff> f(dim);
    for (const auto& t : j.at("terms")) {
        const auto m = t.at("m").get<std::vector<long>>();
        f.add_term(m, TrivialCoeff{rat_from_json(t.at("coeff"))});
    }
    return f;
}

inline LaurentPoly<TadicCoeff> tadic_poly_from_json(const Json& j, std::size_t dim)
{
    LaurentPoly<TadicCoeff> f(dim);
    for (const auto& t : j.at("terms")) {
        const auto m = t.at("m").get<std::vector<long>>();
        TadicCoeff c;
        for (const auto& piece : t.at("coeff"))
            c = c + TadicCoeff::monomial(piece.at("e").get<long>(), rat_from_json(piece.at("c")));
        f.add_term(m, c);
    }
    return f;
}

inline Json adelic_to_json(const AdelicDivisor& a)
{
    Json j;
    j["boundary"] = divisor_to_json(a.boundary().divisor());
    j["terms"] = Json::array();
    for (const auto& t : a.terms()) j["terms"].push_back(plconical_to_json(t));
    Json eps = Json::array();
    for (const auto& e : a.epsilons()) eps.push_back(rat_to_json(e));
    j["epsilons"] = eps;
    return j;
}

inline AdelicDivisor adelic_from_json(const Json& j)
{
    if (!j.contains("boundary") || !j.contains("terms") || !j.contains("epsilons"))
        throw Error("adelic sequence JSON needs boundary, terms, epsilons");
    BoundaryDatum z(divisor_from_json(j.at("boundary")));
    std::vector<PLConical> terms;
    for (const auto& t : j.at("terms")) terms.push_back(plconical_from_json(t));
    std::vector<Rat> eps;
    for (const auto& e : j.at("epsilons")) eps.push_back(rat_from_json(e));
    return AdelicDivisor(std::move(z), std::move(terms), std::move(eps));
}

inline Json polytope_to_json(const Polytope& p)
{
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : p.vertices()) j["vertices"].push_back(qvec_to_json(v));
    return j;
}

inline Polytope polytope_from_json(const Json& j, std::size_t dim)
{
    std::vector<QVec> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(qvec_from_json(v));
    return Polytope::from_points(dim, std::move(pts));
}

inline MultiPoly multipoly_from_json(const Json& j, std::size_t nvars)
{
    MultiPoly p(nvars);
    for (const auto& t : j) {
        const auto exps = t.at("exps").get<std::vector<int>>();
        p.add_term(exps, rat_from_json(t.at("coeff")));
    }
    return p;
}

inline HomogeneousRational mu_from_json(const Json& j)
{
    if (!j.contains("num") || !j.contains("den")) throw Error("mu JSON needs num and den");
    std::size_t nvars = 0;
    for (const auto& part : {j.at("num"), j.at("den")})
        for (const auto& t : part) nvars = std::max(nvars, t.at("exps").get<std::vector<int>>().size());
    return HomogeneousRational(multipoly_from_json(j.at("num"), nvars),
                               multipoly_from_json(j.at("den"), nvars));
}

}  // namespace tropadel

#endif
