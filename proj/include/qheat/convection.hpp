#pragma once

#include "qheat/modforms.hpp"
#include "qheat/qseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qheat {

/// Psi_q(u) = dq(u)/u; additive on units, Psi_q(q) = 1.
QSeries psi_q(const QSeries& u);

/// Psi_p(u) = (1/p) log(phi_star(u)/u^p); additive, kills Teichmuller
/// constants and q itself (phi(q) = q^p).  Costs one digit of precision.
QSeries psi_p(const QSeries& u);

/// Psi_p restricted to a constant unit.
PadicNum psi_p_const(const PadicNum& c);

/// Parameters of Psi_q(u) + kappa Psi_p(u) + kappa z phi(Psi_p(u)) = rhs.
/// kappa_integer marks the caller's assertion kappa in Z_+ (with the exact
/// value); the dichotomy is arithmetic, not p-adically decidable.
struct EquationParams {
    PadicNum kappa;
    PadicNum z;
    int rhs = 0;  // 0 (kernel) or -1 (inhomogeneous)
    bool kappa_integer = false;
    long kappa_int = 0;

    static EquationParams make(const CtxPtr& ctx, long kappa, const Rat& z, int rhs);
    static EquationParams make(const CtxPtr& ctx, const Rat& kappa, const Rat& z, int rhs);
};

struct ResidualReport {
    QSeries residual;
    long min_coeff_valuation;  // LONG_MAX when residual vanishes to truncation
    int tolerance;
    bool pass;
};

/// Evaluates the convection/heat residual of u against eq.
ResidualReport residual(const QSeries& u, const EquationParams& eq, int tolerance);

/// Solves Psi_p(beta) + z phi(Psi_p(beta)) = -1/kappa for beta in 1+pR.
PadicNum solve_beta(const EquationParams& eq);

/// (u, v) -> (v^4 a4_inf(uq), v^6 a6_inf(uq)); image is always bad-type.
ModularPoint encode_iota(const QSeries& u, const QSeries& v, int M = -1);

struct DecodeResult {
    QSeries u;
    QSeries v2;
    bool v_exists;  // v2 has a square root in the coefficient ring
    QSeries v;      // valid only when v_exists
};

/// Inverse of encode up to the sign of v: u = sigma(1/j)/q with sigma the
/// compositional inverse of 1/j_inf; returns v^2 (v only when the constant
/// of v^2 is a square).
DecodeResult decode_iota(const ModularPoint& pt);

enum class PivotStatus { determined, free_param, obstructed };

struct CensusRow {
    int n;
    long pivot_valuation;  // -1 encodes an exactly-zero pivot
    PivotStatus status;
};

struct SolveCensus {
    std::vector<CensusRow> rows;
    std::vector<int> free_positions;
    std::vector<int> obstructed_positions;
    int parameter_count = 0;
    QSeries w;         // solved log-series (free coefficients set to free_value)
    QSeries solution;  // c0 * exp(w)
};

/// Coefficient-by-coefficient solver for the linearized equation in
/// w = log(u/c0): (n - kappa) w_n + (kappa/p - kappa z) phi(w_{n/p})
/// + (kappa z / p) phi^2(w_{n/p^2}) = 0.  c0 must satisfy the constant
/// constraint kappa Psi_p(c0) + kappa z phi(Psi_p(c0)) = rhs.
SolveCensus term_solver(const EquationParams& eq, const PadicNum& c0, int M,
                        std::optional<PadicNum> free_value = std::nullopt);

}  // namespace qheat
