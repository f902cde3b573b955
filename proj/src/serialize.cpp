#include "qheat/serialize.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace qheat {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

std::string join_residue(const std::vector<Int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

std::vector<Int> split_residue(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) out.emplace_back(Int(cur));
    if (out.empty()) out.emplace_back(0);
    return out;
}

std::string rat_str(const Rat& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

// largest modulus exponent at which every coefficient's residue is known
int window_precision(const QSeries& s) {
    long k = s.eff_prec();
    for (int e = s.lowest(); e <= s.order(); ++e)
        k = std::min(k, s.coeff(e).abs_prec());
    return int(std::max(0L, k));
}

}  // namespace

Json to_json(const PadicNum& v) {
    const CtxPtr& c = v.ctx();
    Json j;
    j["p"] = c->p;
    j["N"] = c->N;
    j["f"] = c->f;
    if (v.is_zero() && v.abs_prec() == LONG_MAX) {
        j["valuation"] = nullptr;
        j["residue"] = "0";
        j["prec"] = c->N;
    } else {
        int k = int(std::min<long>(v.abs_prec(), c->N));
        j["valuation"] = v.is_zero() ? Json(nullptr) : Json(v.valuation());
        j["residue"] = join_residue(v.residue(k));
        j["prec"] = k;
    }
    return j;
}

PadicNum padic_from_json(const CtxPtr& ctx, const Json& j) {
    int k = j.value("prec", ctx->N);
    std::vector<Int> v = split_residue(j.at("residue").get<std::string>());
    PadicNum r = ctx->f == 1 ? PadicNum::from_int(ctx, v.at(0))
                             : PadicNum::from_vector(ctx, v);
    if (r.is_zero()) return PadicNum::zero(ctx);
    return r.truncate(int(std::max<long>(0, k - r.valuation())));
}

Json to_json(const QSeries& s) {
    const CtxPtr& c = s.ctx();
    int k = window_precision(s);
    Json j;
    j["p"] = c->p;
    j["N"] = c->N;
    j["f"] = c->f;
    j["M"] = s.order();
    j["lowest"] = s.lowest();
    j["eff_prec"] = k;
    Json arr = Json::array();
    for (int e = s.lowest(); e <= s.order(); ++e)
        arr.push_back(join_residue(s.coeff(e).residue(k)));
    j["coeffs"] = std::move(arr);
    return j;
}

QSeries qseries_from_json(const CtxPtr& ctx, const Json& j) {
    if (j.at("p").get<unsigned>() != ctx->p || j.at("f").get<int>() != ctx->f)
        throw padic_error("series payload does not match context");
    int lowest = j.at("lowest").get<int>();
    int M = j.at("M").get<int>();
    int k = j.at("eff_prec").get<int>();
    const Json& arr = j.at("coeffs");
    if (int(arr.size()) != M - lowest + 1)
        throw padic_error("coefficient count does not match window");
    QSeries s(ctx, lowest, M);
    for (int e = lowest; e <= M; ++e) {
        std::vector<Int> v = split_residue(arr[size_t(e - lowest)].get<std::string>());
        PadicNum coeff = ctx->f == 1 ? PadicNum::from_int(ctx, v.at(0))
                                     : PadicNum::from_vector(ctx, v);
        if (!coeff.is_zero())
            coeff = coeff.truncate(int(std::max<long>(0, k - coeff.valuation())));
        s.set_coeff(e, coeff);
    }
    return s;
}

Json to_json(const RatSeries& s) {
    Json j;
    j["M"] = s.order();
    j["lowest"] = s.lowest();
    Json arr = Json::array();
    for (int e = s.lowest(); e <= s.order(); ++e) arr.push_back(rat_str(s.coeff(e)));
    j["coeffs"] = std::move(arr);
    return j;
}

RatSeries rat_series_from_json(const Json& j) {
    int lowest = j.at("lowest").get<int>();
    int M = j.at("M").get<int>();
    const Json& arr = j.at("coeffs");
    if (int(arr.size()) != M - lowest + 1)
        throw padic_error("coefficient count does not match window");
    RatSeries s(lowest, M);
    for (int e = lowest; e <= M; ++e)
        s.set_coeff(e, rat_parse(arr[size_t(e - lowest)].get<std::string>()));
    return s;
}

Json to_json(const ModularPoint& pt) {
    Json j;
    j["a4"] = to_json(pt.a);
    j["a6"] = to_json(pt.b);
    return j;
}

ModularPoint point_from_json(const CtxPtr& ctx, const Json& j) {
    return {qseries_from_json(ctx, j.at("a4")), qseries_from_json(ctx, j.at("a6"))};
}

Json to_json(const SolutionFamily& fam) {
    Json j;
    j["kind"] = fam.kind;
    Json params;
    params["z"] = rat_str(fam.z);
    params["kappa"] = fam.kappa;
    params["alpha"] = rat_str(fam.alpha);
    params["rhs"] = fam.rhs;
    if (!fam.scale.ctx()) {
        params["scale"] = nullptr;
    } else {
        params["scale"] = to_json(fam.scale);
    }
    j["params"] = std::move(params);
    bool modular = fam.kind == "modular_plain" || fam.kind == "modular_deformed";
    j["payload"] = modular ? to_json(fam.point) : to_json(fam.series);
    return j;
}

SolutionFamily family_from_json(const CtxPtr& ctx, const Json& j) {
    SolutionFamily fam;
    fam.kind = j.at("kind").get<std::string>();
    const Json& p = j.at("params");
    fam.z = rat_parse(p.at("z").get<std::string>());
    fam.kappa = p.at("kappa").get<long>();
    fam.alpha = rat_parse(p.at("alpha").get<std::string>());
    fam.rhs = p.at("rhs").get<int>();
    if (!p.at("scale").is_null()) fam.scale = padic_from_json(ctx, p.at("scale"));
    bool modular = fam.kind == "modular_plain" || fam.kind == "modular_deformed";
    if (modular)
        fam.point = point_from_json(ctx, j.at("payload"));
    else
        fam.series = qseries_from_json(ctx, j.at("payload"));
    return fam;
}

Json to_json(const ResidualReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["min_coeff_valuation"] = r.min_coeff_valuation == LONG_MAX
                                   ? Json(nullptr)
                                   : Json(r.min_coeff_valuation);
    j["tolerance"] = r.tolerance;
    Json vals = Json::array();
    for (int e = r.residual.lowest(); e <= r.residual.order(); ++e) {
        const PadicNum& c = r.residual.coeff(e);
        long v = c.is_zero() ? c.abs_prec() : c.valuation();
        vals.push_back(Json::array({e, v == LONG_MAX ? Json(nullptr) : Json(v)}));
    }
    j["coeff_valuations"] = std::move(vals);
    return j;
}

Json to_json(const SolveCensus& c) {
    Json j;
    j["free"] = c.free_positions;
    j["obstructed"] = c.obstructed_positions;
    j["parameter_count"] = c.parameter_count;
    Json rows = Json::array();
    for (const auto& r : c.rows) {
        const char* st = r.status == PivotStatus::determined ? "determined"
                         : r.status == PivotStatus::free_param ? "free"
                                                               : "obstructed";
        rows.push_back(Json{{"n", r.n},
                            {"pivot_valuation", r.pivot_valuation < 0
                                                    ? Json(nullptr)
                                                    : Json(r.pivot_valuation)},
                            {"status", st}});
    }
    j["rows"] = std::move(rows);
    j["solution"] = to_json(c.solution);
    return j;
}

Json to_json(const InstabilityWitness& w) {
    Json j;
    j["scenario"] = w.scenario;
    j["first_bad_exponent"] =
        w.first_bad_exponent ? Json(*w.first_bad_exponent) : Json(nullptr);
    Json t = Json::array();
    for (const auto& [n, v] : w.valuation_table) t.push_back(Json::array({n, v}));
    j["valuation_table"] = std::move(t);
    return j;
}

}  // namespace qheat
