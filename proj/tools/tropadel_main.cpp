// tropadel: exact computations with toric adelic divisors over JSON/CSV files.

#include "tropadel/json_io.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tropadel;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

bool color_enabled()
{
    if (std::getenv("TROPADEL_NO_COLOR") || std::getenv("NO_COLOR")) return false;
    return isatty(fileno(stderr));
}

void diag(const std::string& msg)
{
    if (color_enabled())
        std::cerr << "\033[31merror:\033[0m " << msg << "\n";
    else
        std::cerr << "error: " << msg << "\n";
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

QVec parse_qvec(const std::string& s)
{
    QVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(rat_from_string(tok));
    return v;
}

std::vector<long> parse_longs(const std::string& s)
{
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stol(tok));
    return v;
}

std::vector<double> parse_doubles(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

QMat parse_matrix(const std::string& s)
{
    QMat rows;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_qvec(row));
    return rows;
}

// CSV with a mandatory header line; numeric columns.
std::vector<std::vector<double>> load_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV: " + path);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        rows.push_back(std::move(row));
    }
    return rows;
}

ConicalOracle named_oracle(const std::string& name)
{
    if (name == "euclid") {
        return ConicalOracle{[](const QVec& a) {
            double s = 0;
            for (const auto& x : a) {
                const double d = to_double(x);
                s += d * d;
            }
            return std::sqrt(s);
        }};
    }
    if (name.rfind("pnorm:", 0) == 0) {
        const double p = std::stod(name.substr(6));
        if (p < 1.0) throw Error("pnorm exponent must be >= 1");
        return ConicalOracle{[p](const QVec& a) {
            double s = 0;
            for (const auto& x : a) s += std::pow(std::abs(to_double(x)), p);
            return std::pow(s, 1.0 / p);
        }};
    }
    if (name.rfind("pl:", 0) == 0) {
        auto fn = std::make_shared<PLConical>(plconical_from_json(load_json(name.substr(3))));
        return ConicalOracle{[fn](const QVec& a) { return to_double(fn->eval(a)); }};
    }
    throw Error("unknown oracle '" + name + "' (expected euclid, pnorm:<p>, or pl:<file>)");
}

std::vector<NefDivisor> load_nef(const std::vector<std::string>& paths)
{
    std::vector<NefDivisor> out;
    for (const auto& p : paths) out.emplace_back(divisor_from_json(load_json(p)));
    return out;
}

Json sup_ratio_json(const SupRatio& sr)
{
    Json j;
    j["norm"] = sr.finite() ? Json(rat_to_string(*sr.value)) : Json("infinity");
    j["witness"] = qvec_to_json(sr.witness);
    return j;
}

struct Options {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string tol = "1/1000";
    int depth = 6;
    int grid = 4000;
};

int run(int argc, char** argv)
{
    CLI::App app{"exact toric adelic divisor computations"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "seed for all sampled checks")->capture_default_str();
    app.add_option("--jobs", opt.jobs, "worker threads for sampling")->capture_default_str();
    app.add_option("--tol", opt.tol, "tolerance as a rational p/q")->capture_default_str();
    app.add_option("--depth", opt.depth, "subdivision depth")->capture_default_str();
    app.add_option("--grid", opt.grid, "cross-section sample target")->capture_default_str();

    int exit_code = kExitOk;

    // ------------------------------------------------------------------ fan
    auto* fan_cmd = app.add_subcommand("fan", "fan operations");
    fan_cmd->require_subcommand(1);
    {
        auto* v = fan_cmd->add_subcommand("validate", "check fan axioms and declared flags");
        auto path = std::make_shared<std::string>();
        v->add_option("--fan", *path, "fan JSON")->required();
        v->callback([path, &exit_code]() {
            Json out;
            try {
                Fan f = fan_from_json(load_json(*path));
                f.validate();
                out["valid"] = true;
                out["complete"] = f.is_complete();
                out["simplicial"] = f.is_simplicial();
            } catch (const Error& e) {
                out["valid"] = false;
                out["error"] = e.what();
                exit_code = kExitCheckFailed;
            }
            emit(out);
        });
    }
    {
        auto* r = fan_cmd->add_subcommand("refine", "common refinement of two fans");
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
        r->add_option("--fan", *a, "first fan JSON")->required();
        r->add_option("--with", *b, "second fan JSON")->required();
        r->callback([a, b, &opt]() {
            emit(fan_to_json(
                common_refinement(fan_from_json(load_json(*a)), fan_from_json(load_json(*b)), opt.seed)));
        });
    }
    {
        auto* s = fan_cmd->add_subcommand("simplicialize", "stellar subdivision to a simplicial fan");
        auto a = std::make_shared<std::string>();
        s->add_option("--fan", *a, "fan JSON")->required();
        s->callback([a]() { emit(fan_to_json(simplicialize(fan_from_json(load_json(*a))))); });
    }

    // ------------------------------------------------------------------- sf
    auto* sf_cmd = app.add_subcommand("sf", "piecewise-linear conical functions");
    sf_cmd->require_subcommand(1);
    {
        auto* e = sf_cmd->add_subcommand("eval", "evaluate at a rational vector");
        auto f = std::make_shared<std::string>(), at = std::make_shared<std::string>();
        e->add_option("--fn", *f, "function JSON")->required();
        e->add_option("--at", *at, "comma-separated rationals")->required();
        e->callback([f, at]() {
            Json out;
            out["value"] = rat_to_string(plconical_from_json(load_json(*f)).eval(parse_qvec(*at)));
            emit(out);
        });
    }
    for (const bool is_min : {false, true}) {
        auto* c = sf_cmd->add_subcommand(is_min ? "min" : "add",
                                         is_min ? "pointwise minimum" : "pointwise sum");
        auto f = std::make_shared<std::string>(), g = std::make_shared<std::string>();
        c->add_option("--fn", *f, "first function JSON")->required();
        c->add_option("--with", *g, "second function JSON")->required();
        c->callback([f, g, is_min]() {
            PLConical a = plconical_from_json(load_json(*f));
            PLConical b = plconical_from_json(load_json(*g));
            emit(plconical_to_json(is_min ? min(a, b) : add(a, b)));
        });
    }
    {
        auto* n = sf_cmd->add_subcommand("norm", "boundary norm against a positive divisor");
        auto f = std::make_shared<std::string>(), z = std::make_shared<std::string>();
        n->add_option("--fn", *f, "function JSON")->required();
        n->add_option("--boundary", *z, "boundary divisor JSON")->required();
        n->callback([f, z]() {
            BoundaryDatum zd(divisor_from_json(load_json(*z)));
            emit(sup_ratio_json(boundary_norm(plconical_from_json(load_json(*f)), zd)));
        });
    }

    // -------------------------------------------------------------- divisor
    auto* div_cmd = app.add_subcommand("divisor", "toric boundary divisors");
    div_cmd->require_subcommand(1);
    {
        auto* s = div_cmd->add_subcommand("sf", "supporting function of a divisor");
        auto d = std::make_shared<std::string>();
        s->add_option("--divisor", *d, "divisor JSON")->required();
        s->callback([d]() {
            emit(plconical_to_json(supporting_function(divisor_from_json(load_json(*d)))));
        });
    }
    {
        auto* p = div_cmd->add_subcommand("pullback", "pull back along an integer linear map");
        auto d = std::make_shared<std::string>(), onto = std::make_shared<std::string>(),
             map = std::make_shared<std::string>();
        p->add_option("--divisor", *d, "divisor JSON")->required();
        p->add_option("--map", *map, "matrix rows 'a,b;c,d' (target rows x source cols)")->required();
        p->add_option("--onto", *onto, "source fan JSON")->required();
        p->callback([d, onto, map]() {
            ToricModel source(fan_from_json(load_json(*onto)));
            emit(divisor_to_json(
                pullback_linear(divisor_from_json(load_json(*d)), parse_matrix(*map), source)));
        });
    }
    {
        auto* a = div_cmd->add_subcommand("arc-order", "vanishing order along a monomial arc");
        auto d = std::make_shared<std::string>(), arc = std::make_shared<std::string>();
        a->add_option("--divisor", *d, "divisor JSON")->required();
        a->add_option("--arc", *arc, "arc JSON")->required();
        a->callback([d, arc]() {
            ToricDivisor dv = divisor_from_json(load_json(*d));
            MonomialArc marc = arc_from_json(load_json(*arc), dv.model());
            Json out;
            out["order"] = rat_to_string(arc_order(supporting_function(dv), marc));
            emit(out);
        });
    }

    // ---------------------------------------------------------------- point
    auto* pt_cmd = app.add_subcommand("point", "monomial seminorm points");
    pt_cmd->require_subcommand(1);
    {
        auto* e = pt_cmd->add_subcommand("eval", "valuation of a Laurent polynomial at a point");
        auto p = std::make_shared<std::string>(), poly = std::make_shared<std::string>();
        e->add_option("--point", *p, "point JSON")->required();
        e->add_option("--poly", *poly, "Laurent polynomial JSON")->required();
        e->callback([p, poly]() {
            MonomialPoint pt = point_from_json(load_json(*p));
            const Json pj = load_json(*poly);
            std::optional<Rat> v;
            if (pt.spec == CoeffKind::trivial)
                v = valuation_eval(pt, trivial_poly_from_json(pj, pt.a.size()));
            else
                v = valuation_eval(pt, tadic_poly_from_json(pj, pt.a.size()));
            Json out;
            out["valuation"] = v ? Json(rat_to_string(*v)) : Json("infinity");
            emit(out);
        });
    }
    {
        auto* t = pt_cmd->add_subcommand("trop", "tropicalization of a point");
        auto p = std::make_shared<std::string>();
        t->add_option("--point", *p, "point JSON")->required();
        t->callback([p]() {
            Json out;
            out["a"] = qvec_to_json(trop(point_from_json(load_json(*p))));
            emit(out);
        });
    }
    {
        auto* q = pt_cmd->add_subcommand("equiv", "norm equivalence of two points");
        auto p1 = std::make_shared<std::string>(), p2 = std::make_shared<std::string>();
        q->add_option("--point", *p1, "first point JSON")->required();
        q->add_option("--with", *p2, "second point JSON")->required();
        q->callback([p1, p2]() {
            const auto s =
                norm_equivalent(point_from_json(load_json(*p1)), point_from_json(load_json(*p2)));
            Json out;
            out["equivalent"] = s.has_value();
            if (s) out["scale"] = rat_to_string(*s);
            emit(out);
        });
    }
    {
        auto* g = pt_cmd->add_subcommand("green", "model Green function of a monomial ideal");
        auto p = std::make_shared<std::string>(), gens = std::make_shared<std::string>();
        g->add_option("--point", *p, "point JSON")->required();
        g->add_option("--gens", *gens, "JSON array of exponent vectors")->required();
        g->callback([p, gens]() {
            const auto gj = load_json(*gens).get<std::vector<std::vector<long>>>();
            Json out;
            out["value"] = rat_to_string(model_green(gj, point_from_json(load_json(*p))));
            emit(out);
        });
    }
    {
        auto* it = pt_cmd->add_subcommand("interior", "interior criterion against a boundary divisor");
        auto p = std::make_shared<std::string>(), z = std::make_shared<std::string>();
        it->add_option("--point", *p, "point JSON")->required();
        it->add_option("--divisor", *z, "effective boundary divisor JSON")->required();
        it->callback([p, z]() {
            Json out;
            out["interior"] =
                interior_test(point_from_json(load_json(*p)), divisor_from_json(load_json(*z)));
            emit(out);
        });
    }

    // --------------------------------------------------------------- adelic
    auto* ad_cmd = app.add_subcommand("adelic", "Cauchy sequences of model divisors");
    ad_cmd->require_subcommand(1);
    {
        auto* ap = ad_cmd->add_subcommand("approx", "build a sequence from a conical oracle");
        auto oracle = std::make_shared<std::string>(), ref = std::make_shared<std::string>(),
             z = std::make_shared<std::string>(), target = std::make_shared<std::string>();
        ap->add_option("--oracle", *oracle, "euclid | pnorm:<p> | pl:<file>")->required();
        ap->add_option("--reference", *ref, "complete simplicial reference fan JSON")->required();
        ap->add_option("--boundary", *z, "boundary divisor JSON")->required();
        ap->add_option("--target", *target, "target epsilon p/q")->required();
        ap->callback([oracle, ref, z, target, &opt]() {
            BoundaryDatum zd(divisor_from_json(load_json(*z)));
            AdelicDivisor a = from_oracle(named_oracle(*oracle), fan_from_json(load_json(*ref)), zd,
                                          rat_from_string(*target), opt.grid, opt.jobs);
            for (std::size_t i = 0; i < a.materialized(); ++i)
                std::cerr << "term " << i << ": " << a.terms()[i].fan().rays().size() << " rays, eps "
                          << rat_to_string(a.epsilons()[i]) << "\n";
            emit(adelic_to_json(a));
        });
    }
    {
        auto* ve = ad_cmd->add_subcommand("verify", "exact Cauchy verification of a prefix");
        auto s = std::make_shared<std::string>();
        auto prefix = std::make_shared<int>(0);
        ve->add_option("--seq", *s, "sequence JSON")->required();
        ve->add_option("--prefix", *prefix, "number of terms to verify (0 = all)");
        ve->callback([s, prefix, &exit_code]() {
            AdelicDivisor a = adelic_from_json(load_json(*s));
            const std::size_t n = *prefix > 0 ? static_cast<std::size_t>(*prefix) : a.materialized();
            const auto rep = verify_cauchy(a, n);
            Json out;
            out["pass"] = rep.pass;
            out["pairs"] = Json::array();
            for (const auto& p : rep.pairs) {
                Json pj;
                pj["i"] = p.i;
                pj["j"] = p.j;
                pj["norm"] = p.norm ? Json(rat_to_string(*p.norm)) : Json("infinity");
                pj["bound"] = rat_to_string(p.bound);
                pj["pass"] = p.pass;
                if (!p.pass) pj["witness"] = qvec_to_json(p.witness);
                out["pairs"].push_back(pj);
            }
            emit(out);
            if (!rep.pass) exit_code = kExitCheckFailed;
        });
    }
    {
        auto* gr = ad_cmd->add_subcommand("green", "Green function value at a monomial point");
        auto s = std::make_shared<std::string>(), p = std::make_shared<std::string>();
        gr->add_option("--seq", *s, "sequence JSON")->required();
        gr->add_option("--point", *p, "point JSON")->required();
        gr->callback([s, p, &opt]() {
            AdelicDivisor a = adelic_from_json(load_json(*s));
            const auto g = green_of_adelic(a, point_from_json(load_json(*p)), rat_from_string(opt.tol));
            Json out;
            out["value"] = rat_to_string(g.value);
            out["value_double"] = to_double(g.value);
            out["certified_error"] = rat_to_string(g.certified_error);
            out["depth_used"] = g.depth_used;
            emit(out);
        });
    }

    // ----------------------------------------------------------------- pair
    auto* pair_cmd = app.add_subcommand("pair", "intersection pairings");
    pair_cmd->require_subcommand(1);
    {
        auto* in = pair_cmd->add_subcommand("intersect", "intersection number of nef divisors");
        auto files = std::make_shared<std::vector<std::string>>();
        in->add_option("--divisors", *files, "divisor JSON files (dim many)")->required();
        in->callback([files]() {
            Json out;
            out["value"] = rat_to_string(intersection_number(load_nef(*files)));
            emit(out);
        });
    }
    {
        auto* pa = pair_cmd->add_subcommand("adelic", "pairing with one adelic argument");
        auto s = std::make_shared<std::string>();
        auto nef = std::make_shared<std::vector<std::string>>();
        pa->add_option("--seq", *s, "sequence JSON")->required();
        pa->add_option("--nef", *nef, "nef divisor JSON files (dim-1 many)")->required();
        pa->callback([s, nef, &opt]() {
            AdelicDivisor a = adelic_from_json(load_json(*s));
            const auto res = pair_adelic(a, load_nef(*nef), rat_from_string(opt.tol));
            Json out;
            out["value"] = rat_to_string(res.value);
            out["value_double"] = to_double(res.value);
            out["certified_error"] = rat_to_string(res.certified_error);
            out["depth_used"] = res.depth_used;
            emit(out);
        });
    }
    {
        auto* ma = pair_cmd->add_subcommand("ma", "pairing as a functional on boundary functions");
        auto h = std::make_shared<std::string>(), z = std::make_shared<std::string>();
        auto nef = std::make_shared<std::vector<std::string>>();
        ma->add_option("--fn", *h, "boundary function as PL JSON (ratio values on rays)")->required();
        ma->add_option("--nef", *nef, "nef divisor JSON files (dim-1 many)")->required();
        ma->add_option("--boundary", *z, "boundary divisor JSON")->required();
        ma->callback([h, nef, z]() {
            BoundaryDatum zd(divisor_from_json(load_json(*z)));
            Json out;
            out["value"] =
                rat_to_string(ma_integral(plconical_from_json(load_json(*h)), load_nef(*nef), zd));
            emit(out);
        });
    }

    // ---------------------------------------------------------------- slope
    auto* sl_cmd = app.add_subcommand("slope", "asymptotic height slopes");
    sl_cmd->require_subcommand(1);
    {
        auto* fit = sl_cmd->add_subcommand("fit", "least-squares slope against -log|s|");
        auto csv = std::make_shared<std::string>();
        fit->add_option("--samples", *csv, "CSV with header, columns |s|,h")->required();
        fit->callback([csv]() {
            std::vector<std::pair<double, double>> samples;
            for (const auto& row : load_csv(*csv)) {
                if (row.size() != 2) throw Error("slope fit CSV needs exactly two columns");
                samples.emplace_back(row[0], row[1]);
            }
            const auto f = fit_slope(samples);
            Json out;
            out["slope"] = f.slope;
            out["intercept"] = f.intercept;
            out["o1_bound"] = f.o1_bound;
            emit(out);
        });
    }
    {
        auto* ex = sl_cmd->add_subcommand("expect", "predicted slope of a pulled-back height");
        auto mu = std::make_shared<std::string>(), orders = std::make_shared<std::string>();
        ex->add_option("--mu", *mu, "homogeneous rational JSON")->required();
        ex->add_option("--orders", *orders, "comma-separated positive integers")->required();
        ex->callback([mu, orders]() {
            Json out;
            out["expected"] =
                rat_to_string(expected_slope(mu_from_json(load_json(*mu)), parse_longs(*orders)));
            emit(out);
        });
    }
    {
        auto* re = sl_cmd->add_subcommand("residual", "Green-function residual test");
        auto values = std::make_shared<std::string>(), csv = std::make_shared<std::string>(),
             radii = std::make_shared<std::string>();
        re->add_option("--values", *values, "simplex vertex values, comma-separated")->required();
        re->add_option("--samples", *csv, "CSV with header, columns |z_1|,...,|z_r|,g")->required();
        re->add_option("--radii", *radii, "increasing radius schedule, comma-separated")->required();
        re->callback([values, csv, radii, &exit_code]() {
            const std::vector<double> vals = parse_doubles(*values);
            SimplexFunction f = SimplexFunction::linear(vals);
            std::vector<GreenSample> samples;
            for (const auto& row : load_csv(*csv)) {
                if (row.size() != vals.size() + 1)
                    throw Error("residual CSV needs r moduli columns plus one height column");
                GreenSample s;
                s.moduli.assign(row.begin(), row.end() - 1);
                s.g = row.back();
                samples.push_back(std::move(s));
            }
            const auto rep = green_residual(f, samples, parse_doubles(*radii));
            Json out;
            out["pass"] = rep.pass;
            out["residuals"] = Json::array();
            for (const auto& [radius, res] : rep.residuals)
                out["residuals"].push_back(Json::array({radius, res}));
            emit(out);
            if (!rep.pass) exit_code = kExitCheckFailed;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            diag(e.get_name() + std::string(": ") + e.what());
            return kExitInputError;
        }
        return app.exit(e);  // --help and friends
    } catch (const Error& e) {
        diag(e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        diag(e.what());
        return kExitInputError;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
