#include "qheat/convection.hpp"
#include "qheat/instability.hpp"
#include "qheat/modforms.hpp"
#include "qheat/serialize.hpp"
#include "qheat/solutions.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace qheat;

namespace {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string rat_str(const Rat& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string expand_json(const std::string& name, int terms) {
    int M = terms - 1;
    RatSeries s;
    if (name == "e2") s = eisenstein(2, M);
    else if (name == "e4") s = eisenstein(4, M);
    else if (name == "e6") s = eisenstein(6, M);
    else if (name == "delta") s = delta_series(M);
    else if (name == "eta24") s = eta24_series(M).truncate(M + 1);
    else if (name == "j") s = j_series(M - 1);
    else if (name == "tate-a4") s = tate_a4(M);
    else if (name == "tate-a6") s = tate_a6(M);
    else throw padic_error("unknown series " + name);
    return canonical_dump(to_json(s));
}

std::string u_mult_json(unsigned p, const std::string& z, long kappa,
                        const std::string& alpha, int M) {
    return canonical_dump(to_json(u_mult_rat(p, parse_rat(z), kappa, parse_rat(alpha), M)));
}

std::string verify_json(unsigned p, int N, int f, long kappa, const std::string& z,
                        int rhs, const std::string& alpha, long zeta_rep, int M,
                        int tol) {
    auto ctx = make_context(p, N, f);
    Rat zr = parse_rat(z);
    auto eq = EquationParams::make(ctx, kappa, zr, rhs);
    PadicNum scale = rhs == 0 ? teichmuller(ctx, Int(zeta_rep)) : solve_beta(eq);
    QSeries u =
        QSeries::from_rational(ctx, u_mult_rat(p, zr, kappa, parse_rat(alpha), M))
            .scale(scale);
    ResidualReport rep = residual(u, eq, tol < 0 ? N - 3 : tol);
    return canonical_dump(to_json(rep));
}

std::string census_json(unsigned p, int N, const std::string& kappa,
                        const std::string& z, int rhs, int M) {
    auto ctx = make_context(p, N);
    Rat kr = parse_rat(kappa), zr = parse_rat(z);
    EquationParams eq = (denominator(kr) == 1 && kr > 0)
                            ? EquationParams::make(ctx, long(numerator(kr)), zr, rhs)
                            : EquationParams::make(ctx, kr, zr, rhs);
    PadicNum c0 = rhs == 0 ? PadicNum::from_int(ctx, 1) : solve_beta(eq);
    return canonical_dump(to_json(term_solver(eq, c0, M)));
}

std::string instability_json(unsigned p, long kappa, const std::string& alpha,
                             const std::string& alpha0, const std::string& z,
                             const std::string& z0, int M, int rows) {
    InstabilityWitness w =
        instability_witness(p, kappa, parse_rat(alpha), parse_rat(alpha0),
                            parse_rat(z), parse_rat(z0), 1, 1, M, rows);
    return canonical_dump(to_json(w));
}

}  // namespace

PYBIND11_MODULE(_qheat, m) {
    m.doc() = "exact arithmetic for the p-adic convection/heat calculus";

    m.def("b_eval",
          [](int n, const std::string& x, const std::string& y) {
              return rat_str(b_eval(n, parse_rat(x), parse_rat(y)));
          },
          py::arg("n"), py::arg("x"), py::arg("y"),
          "b_n at exact rational (x, y), as a rational string");
    m.def("bn_diff_valuation",
          [](unsigned p, int n, const std::string& z, const std::string& z0) {
              return bn_diff_valuation(p, n, parse_rat(z), parse_rat(z0));
          },
          py::arg("p"), py::arg("n"), py::arg("z"), py::arg("z0"));
    m.def("expand_json", &expand_json, py::arg("name"), py::arg("terms"),
          "canonical JSON of a fixture q-expansion");
    m.def("u_mult_json", &u_mult_json, py::arg("p"), py::arg("z"), py::arg("kappa"),
          py::arg("alpha"), py::arg("M"),
          "exact-rational multiplicative family, canonical JSON");
    m.def("verify_json", &verify_json, py::arg("p"), py::arg("N"), py::arg("f"),
          py::arg("kappa"), py::arg("z"), py::arg("rhs"), py::arg("alpha") = "1",
          py::arg("zeta") = 1, py::arg("M") = 50, py::arg("tol") = -1,
          "residual report for the scaled multiplicative family");
    m.def("census_json", &census_json, py::arg("p"), py::arg("N"), py::arg("kappa"),
          py::arg("z"), py::arg("rhs") = 0, py::arg("M") = 30,
          "pivot census of the coefficientwise solver");
    m.def("instability_json", &instability_json, py::arg("p"), py::arg("kappa"),
          py::arg("alpha"), py::arg("alpha0"), py::arg("z"), py::arg("z0"),
          py::arg("M") = 30, py::arg("rows") = 10,
          "mod-p perturbation witness and valuation table");
}
