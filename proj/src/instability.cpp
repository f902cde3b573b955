#include "qheat/instability.hpp"

#include "qheat/solutions.hpp"

namespace qheat {

long bn_diff_valuation(unsigned p, int n, const Rat& z, const Rat& z0) {
    if (z == z0) throw padic_error("bn_diff_valuation: z = z0");
    if (n < 1) throw padic_error("bn_diff_valuation: n >= 1 required");
    Rat y = long(p);
    Rat d = b_eval(n, Rat(long(p)) * z, y) - b_eval(n, Rat(long(p)) * z0, y);
    if (d == 0) throw padic_error("bn_diff_valuation: difference vanishes");
    return rat_valuation(d, p);
}

std::optional<int> modp_congruent_rat(const RatSeries& F, const RatSeries& G, unsigned p,
                                      int M) {
    int lo = std::min(F.lowest(), G.lowest());
    int hi = std::min({M, F.order(), G.order()});
    for (int e = lo; e <= hi; ++e) {
        Rat d = F.coeff(e) - G.coeff(e);
        if (d != 0 && rat_valuation(d, p) < 1) return e;
    }
    return std::nullopt;
}

std::optional<int> modp_congruent(const QSeries& F, const QSeries& G, int M) {
    int lo = std::min(F.lowest(), G.lowest());
    int hi = std::min({M, F.order(), G.order()});
    for (int e = lo; e <= hi; ++e) {
        if (!F.coeff(e).congruent(G.coeff(e), 1)) return e;
    }
    return std::nullopt;
}

InstabilityWitness instability_witness(unsigned p, long kappa, const Rat& alpha,
                                       const Rat& alpha0, const Rat& z, const Rat& z0,
                                       const Rat& eta, const Rat& eta0, int M,
                                       int table_rows) {
    bool z_pert = (alpha == alpha0) && (z != z0);
    bool a_pert = (alpha != alpha0) && (z == z0);
    if (z_pert == a_pert)
        throw padic_error(
            "instability_witness: exactly one of {z perturbed, alpha perturbed} must hold");

    InstabilityWitness w;
    w.scenario = z_pert ? "z-perturbed" : "alpha-perturbed";
    RatSeries F = u_mult_rat(p, z, kappa, alpha, M).scale(eta);
    RatSeries G = u_mult_rat(p, z0, kappa, alpha0, M).scale(eta0);
    w.first_bad_exponent = modp_congruent_rat(F, G, p, M);
    if (z_pert) {
        for (int n = 1; n <= table_rows; ++n)
            w.valuation_table.emplace_back(n, bn_diff_valuation(p, n, z, z0));
    }
    return w;
}

}  // namespace qheat
