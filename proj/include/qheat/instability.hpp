#pragma once

#include "qheat/qseries.hpp"
#include "qheat/rat_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qheat {

/// v_p(b_n(pz, p) - b_n(pz0, p)) over exact rationals; z != z0.
long bn_diff_valuation(unsigned p, int n, const Rat& z, const Rat& z0);

/// Smallest exponent <= M where coefficients differ mod p, if any.
std::optional<int> modp_congruent(const QSeries& F, const QSeries& G, int M);
std::optional<int> modp_congruent_rat(const RatSeries& F, const RatSeries& G, unsigned p,
                                      int M);

struct InstabilityWitness {
    std::string scenario;  // "z-perturbed" or "alpha-perturbed"
    std::optional<int> first_bad_exponent;  // empty: inconclusive at truncation
    // rows (n, v_p(b_n(pz,p) - b_n(pz0,p))); filled for the z-perturbed case
    std::vector<std::pair<int, long>> valuation_table;
};

/// Compares eta u^z_{m,kappa,alpha} with eta0 u^{z0}_{m,kappa,alpha0} mod p.
/// Exactly one of (alpha != alpha0, z = z0) / (alpha = alpha0, z != z0) must
/// hold; exact-rational computation throughout.
InstabilityWitness instability_witness(unsigned p, long kappa, const Rat& alpha,
                                       const Rat& alpha0, const Rat& z, const Rat& z0,
                                       const Rat& eta, const Rat& eta0, int M,
                                       int table_rows = 10);

}  // namespace qheat
