#include "qheat/convection.hpp"
#include "qheat/instability.hpp"
#include "qheat/modforms.hpp"
#include "qheat/serialize.hpp"
#include "qheat/solutions.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace qheat;

constexpr int EXIT_VERDICT_FAIL = 1;
constexpr int EXIT_USAGE = 2;

struct Globals {
    unsigned p = 5;
    int N = 8;
    int f = 1;
    int M = 0;  // 0: per-command default
    unsigned long seed = 20240501;
    int jobs = 1;
    bool table = false;
};

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Json context_json(const Globals& g, int M) {
    return Json{{"p", g.p}, {"N", g.N}, {"f", g.f}, {"M", M}, {"seed", g.seed}};
}

void emit(const Json& j) { std::cout << canonical_dump(j); }

Json read_json_input(const std::string& path) {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw padic_error("cannot open " + path);
    return Json::parse(in);
}

// ---- expand ---------------------------------------------------------------

int run_expand(const Globals& g, const std::string& name, int terms) {
    if (terms < 1) throw CLI::ValidationError("--terms must be >= 1");
    auto rational = [&](const RatSeries& s, int lowest) {
        Json j = to_json(s.truncate(lowest + terms - 1));
        j["context"] = context_json(g, lowest + terms - 1);
        emit(j);
        return 0;
    };
    int M = terms - 1;
    if (name == "e2") return rational(eisenstein(2, M), 0);
    if (name == "e4") return rational(eisenstein(4, M), 0);
    if (name == "e6") return rational(eisenstein(6, M), 0);
    if (name == "delta") return rational(delta_series(M), 0);
    if (name == "eta24") return rational(eta24_series(M), 1);
    if (name == "j") return rational(j_series(M - 1 > -1 ? M - 1 : -1), -1);
    if (name == "tate-a4") return rational(tate_a4(M), 0);
    if (name == "tate-a6") return rational(tate_a6(M), 0);
    if (name == "hurlburt") {
        auto ctx = make_context(g.p, g.N, g.f);
        Json j = to_json(hurlburt_f1q(tate_point(ctx, M + 4)).truncate(M));
        j["context"] = context_json(g, M);
        emit(j);
        return 0;
    }
    throw CLI::ValidationError("unknown series " + name);
}

// ---- solve / verify -------------------------------------------------------

struct FamilyArgs {
    std::string family = "multiplicative";
    long kappa = 1;
    std::string z = "0";
    std::string alpha = "1";
    std::string eta = "1";
    long zeta = 1;  // Teichmuller representative for the kernel prefactor
};

void add_family_flags(CLI::App* cmd, FamilyArgs& a) {
    cmd->add_option("--family", a.family,
                    "additive|multiplicative|kernel|heat|modular|modular-deformed");
    cmd->add_option("--kappa", a.kappa, "positive integer prime to p");
    cmd->add_option("--z", a.z, "element of pZ_p, as a rational string");
    cmd->add_option("--alpha", a.alpha, "rational alpha");
    cmd->add_option("--eta", a.eta, "unit eta for the modular families");
    cmd->add_option("--zeta", a.zeta, "Teichmuller representative scaling the kernel");
}

SolutionFamily build_from_args(const CtxPtr& ctx, const FamilyArgs& a, int M) {
    Rat z = parse_rat(a.z), alpha = parse_rat(a.alpha);
    PadicNum eta = PadicNum::from_rational(ctx, parse_rat(a.eta));
    QSeries v = QSeries::constant(PadicNum::from_int(ctx, 1), M);
    PadicNum one = PadicNum::from_int(ctx, 1);
    if (a.family == "additive")
        return build_family(ctx, "additive", z, a.kappa, alpha, eta, v, one, 0, M);
    if (a.family == "multiplicative")
        return build_family(ctx, "multiplicative", z, a.kappa, alpha, eta, v, one, 0, M);
    if (a.family == "kernel") {
        PadicNum zeta = teichmuller(ctx, Int(a.zeta));
        return build_family(ctx, "multiplicative", z, a.kappa, alpha, eta, v, zeta, 0, M);
    }
    if (a.family == "heat") {
        PadicNum beta = solve_beta(EquationParams::make(ctx, a.kappa, z, -1));
        return build_family(ctx, "multiplicative", z, a.kappa, alpha, eta, v, beta, -1, M);
    }
    if (a.family == "modular")
        return build_family(ctx, "modular_plain", z, a.kappa, alpha, eta, v, one, 0, M);
    if (a.family == "modular-deformed")
        return build_family(ctx, "modular_deformed", z, a.kappa, alpha, eta, v, one, 0, M);
    throw CLI::ValidationError("unknown family " + a.family);
}

int run_solve(const Globals& g, const FamilyArgs& a, int M) {
    auto ctx = make_context(g.p, g.N, g.f);
    SolutionFamily fam = build_from_args(ctx, a, M);
    Json j = to_json(fam);
    j["context"] = context_json(g, M);
    emit(j);
    return 0;
}

int run_verify(const Globals& g, const FamilyArgs& a, const std::string& in, int M,
               int tol) {
    auto ctx = make_context(g.p, g.N, g.f);
    SolutionFamily fam;
    if (!in.empty()) {
        Json payload = read_json_input(in);
        fam = family_from_json(ctx, payload.contains("kind") ? payload
                                                             : payload.at("family"));
    } else {
        fam = build_from_args(ctx, a, M);
    }
    if (fam.kind != "multiplicative")
        throw CLI::ValidationError("verify applies to series families; got " + fam.kind);
    if (tol < 0) tol = g.N - 3;
    auto eq = EquationParams::make(ctx, fam.kappa, fam.z, fam.rhs);
    ResidualReport rep = residual(fam.series, eq, tol);
    Json j = to_json(rep);
    j["context"] = context_json(g, fam.series.order());
    emit(j);
    return rep.pass ? 0 : EXIT_VERDICT_FAIL;
}

// ---- decompose ------------------------------------------------------------

int run_decompose(const Globals& g, const FamilyArgs& a, const std::string& in, int M) {
    auto ctx = make_context(g.p, g.N, g.f);
    ModularPoint pt;
    if (!in.empty()) {
        Json payload = read_json_input(in);
        const Json& body = payload.contains("a4")
                               ? payload
                               : payload.at("payload");
        pt = point_from_json(ctx, body);
    } else {
        pt = build_from_args(ctx, a, M).point;
    }
    DecodeResult res = decode_iota(pt);
    Json j;
    j["u"] = to_json(res.u);
    j["v2"] = to_json(res.v2);
    j["v_exists"] = res.v_exists;
    if (res.v_exists) j["v"] = to_json(res.v);
    j["ordinary"] = is_ordinary(pt);
    j["context"] = context_json(g, pt.a.order());
    emit(j);
    return 0;
}

// ---- census ---------------------------------------------------------------

int run_census(const Globals& g, const std::string& kappa, const std::string& z,
               int rhs, int M) {
    auto ctx = make_context(g.p, g.N, g.f);
    Rat zr = parse_rat(z);
    Rat kr = parse_rat(kappa);
    EquationParams eq =
        (denominator(kr) == 1 && kr > 0)
            ? EquationParams::make(ctx, long(numerator(kr)), zr, rhs)
            : EquationParams::make(ctx, kr, zr, rhs);
    PadicNum c0 = rhs == 0 ? PadicNum::from_int(ctx, 1) : solve_beta(eq);
    SolveCensus cen = term_solver(eq, c0, M);
    Json j = to_json(cen);
    j["context"] = context_json(g, M);
    if (g.table) {
        std::cout << std::setw(6) << "n" << std::setw(12) << "pivot_val"
                  << "  status\n";
        for (const auto& r : cen.rows) {
            std::cout << std::setw(6) << r.n << std::setw(12);
            if (r.pivot_valuation < 0)
                std::cout << "zero";
            else
                std::cout << r.pivot_valuation;
            const char* st = r.status == PivotStatus::determined ? "determined"
                             : r.status == PivotStatus::free_param ? "free"
                                                                   : "obstructed";
            std::cout << "  " << st << "\n";
        }
    } else {
        emit(j);
    }
    return cen.obstructed_positions.empty() ? 0 : EXIT_VERDICT_FAIL;
}

// ---- instability ----------------------------------------------------------

int run_instability(const Globals& g, long kappa, const std::string& alpha,
                    const std::string& alpha0, const std::string& z,
                    const std::string& z0, const std::string& eta,
                    const std::string& eta0, int M, int rows) {
    InstabilityWitness w =
        instability_witness(g.p, kappa, parse_rat(alpha), parse_rat(alpha0),
                            parse_rat(z), parse_rat(z0), parse_rat(eta),
                            parse_rat(eta0), M, rows);
    if (g.table) {
        std::cout << "scenario: " << w.scenario << "\n";
        std::cout << "first mod-p disagreement: ";
        if (w.first_bad_exponent)
            std::cout << "q^" << *w.first_bad_exponent << "\n";
        else
            std::cout << "inconclusive at truncation\n";
        if (!w.valuation_table.empty()) {
            std::cout << std::setw(6) << "n" << std::setw(12) << "valuation" << "\n";
            for (const auto& [n, v] : w.valuation_table)
                std::cout << std::setw(6) << n << std::setw(12) << v << "\n";
        }
    } else {
        Json j = to_json(w);
        j["context"] = context_json(g, M);
        emit(j);
    }
    return w.first_bad_exponent ? 0 : EXIT_VERDICT_FAIL;
}

// ---- fixtures -------------------------------------------------------------

std::string fixture_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("QHEAT_FIXTURE_DIR")) return env;
    return "data/fixtures";
}

int run_fixtures(const std::string& dir_flag, int order, bool check) {
    std::string dir = fixture_dir(dir_flag);
    RatSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
    RatSeries dl = delta_series(order);
    if (!(e4.pow(3) - e6.pow(2) - dl.scale(1728)).is_zero())
        throw padic_error("fixtures: E4^3 - E6^2 != 1728 Delta");
    if (!(dl - eta24_series(order)).is_zero())
        throw padic_error("fixtures: Delta != eta^24 product");
    std::vector<std::pair<std::string, RatSeries>> all = {
        {"e2", eisenstein(2, order)}, {"e4", e4},    {"e6", e6},
        {"delta", dl},                {"j", j_series(order)}};
    Json summary;
    bool ok = true;
    for (const auto& [name, s] : all) {
        std::string path = dir + "/" + name + ".json";
        std::string text = canonical_dump(to_json(s));
        if (check) {
            std::ifstream in(path);
            std::stringstream have;
            have << in.rdbuf();
            bool same = in.good() && have.str() == text;
            summary[name] = same ? "match" : "MISMATCH";
            ok = ok && same;
        } else {
            std::ofstream out(path);
            if (!out) throw padic_error("fixtures: cannot write " + path);
            out << text;
            summary[name] = "written";
        }
    }
    summary["dir"] = dir;
    summary["order"] = order;
    emit(summary);
    return ok ? 0 : EXIT_VERDICT_FAIL;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for the p-adic convection/heat calculus"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--p", g.p, "prime >= 5")->check(CLI::Range(5u, 1000u));
    app.add_option("--N", g.N, "precision digits")->check(CLI::Range(1, 64));
    app.add_option("--f", g.f, "residue degree")->check(CLI::Range(1, 8));
    app.add_option("--M", g.M, "series truncation order");
    app.add_option("--seed", g.seed, "seed for randomized subcommands");
    app.add_option("--jobs", g.jobs, "parallel grid cells")->check(CLI::Range(1, 64));
    bool want_json = false;
    app.add_flag("--json", want_json, "JSON output (default)");
    app.add_flag("--table", g.table, "aligned-column text output");

    auto* expand = app.add_subcommand("expand", "emit a fixture q-expansion");
    std::string series_name;
    int terms = 16;
    expand->add_option("name", series_name,
                       "e2|e4|e6|delta|eta24|j|tate-a4|tate-a6|hurlburt")
        ->required();
    expand->add_option("--terms", terms, "number of coefficients");

    FamilyArgs solve_args, verify_args, dec_args;
    auto* solve = app.add_subcommand("solve", "build a solution family");
    add_family_flags(solve, solve_args);

    auto* verify = app.add_subcommand("verify", "run the equation residual");
    add_family_flags(verify, verify_args);
    std::string verify_in, dec_in;
    int verify_tol = -1;
    verify->add_option("--in", verify_in, "solution-family JSON file ('-' = stdin)");
    verify->add_option("--tol", verify_tol, "tolerance (default N-3)");

    auto* decompose = app.add_subcommand("decompose", "decode a modular point");
    add_family_flags(decompose, dec_args);
    dec_args.family = "modular-deformed";
    decompose->add_option("--in", dec_in, "point JSON file ('-' = stdin)");

    auto* census = app.add_subcommand("census", "pivot census of the term solver");
    std::string cen_kappa = "1", cen_z = "0";
    int cen_rhs = 0;
    census->add_option("--kappa", cen_kappa, "kappa, rational string");
    census->add_option("--z", cen_z, "z, rational string");
    census->add_option("--rhs", cen_rhs, "0 or -1")->check(CLI::Range(-1, 0));

    auto* inst = app.add_subcommand("instability", "mod-p perturbation witness");
    long i_kappa = 1;
    std::string i_alpha = "1", i_alpha0 = "1", i_z = "0", i_z0 = "0", i_eta = "1",
                i_eta0 = "1";
    int i_rows = 10;
    inst->add_option("--kappa", i_kappa);
    inst->add_option("--alpha", i_alpha);
    inst->add_option("--alpha0", i_alpha0);
    inst->add_option("--z", i_z);
    inst->add_option("--z0", i_z0);
    inst->add_option("--eta", i_eta);
    inst->add_option("--eta0", i_eta0);
    inst->add_option("--rows", i_rows, "valuation-table rows");

    auto* fixtures = app.add_subcommand("fixtures", "regenerate integer expansions");
    std::string fix_dir;
    int fix_order = 200;
    bool fix_check = false;
    fixtures->add_option("--dir", fix_dir, "output dir (default $QHEAT_FIXTURE_DIR)");
    fixtures->add_option("--order", fix_order, "truncation order");
    fixtures->add_flag("--check", fix_check, "compare instead of write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (*expand) return run_expand(g, series_name, terms);
        if (*solve) return run_solve(g, solve_args, g.M > 0 ? g.M : 50);
        if (*verify) return run_verify(g, verify_args, verify_in, g.M > 0 ? g.M : 50,
                                       verify_tol);
        if (*decompose)
            return run_decompose(g, dec_args, dec_in, g.M > 0 ? g.M : 20);
        if (*census) return run_census(g, cen_kappa, cen_z, cen_rhs,
                                       g.M > 0 ? g.M : 30);
        if (*inst)
            return run_instability(g, i_kappa, i_alpha, i_alpha0, i_z, i_z0, i_eta,
                                   i_eta0, g.M > 0 ? g.M : 30, i_rows);
        if (*fixtures) return run_fixtures(fix_dir, fix_order, fix_check);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const padic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VERDICT_FAIL;
    }
    return EXIT_USAGE;
}
