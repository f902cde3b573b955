#pragma once

#include "qheat/modforms.hpp"
#include "qheat/qseries.hpp"
#include "qheat/rat_series.hpp"

#include <vector>

namespace qheat {

/// b_{-1} = 0, b_0 = 1, b_n = (1-x)/(1-y^n) b_{n-1} + x/(1-y^n) b_{n-2};
/// requires y^k != 1 for 1 <= k <= n.
Rat b_eval(int n, const Rat& x, const Rat& y);

/// Full table b_{-1}..b_n at (x, y); entry i+1 is b_i.
std::vector<Rat> b_table(int n, const Rat& x, const Rat& y);

/// b_n(x,0) = (1 + (-1)^n x^(n+1))/(1+x).
Rat b_closed_y0(int n, const Rat& x);
/// b_n(0,y) = 1/((1-y)(1-y^2)...(1-y^n)).
Rat b_closed_x0(int n, const Rat& y);

/// Coefficients of the polynomial b_n(x, 0); index = power of x.
std::vector<Rat> b_x_poly(int n);

/// d b_n/dx at (0,0) by exact polynomial differentiation (equals -1, n >= 1).
Rat b_dx_at00(int n);

/// Additive family: sum over kappa p^n <= M of b_n(pz, p) phi^n(alpha) q^(kappa p^n).
/// kappa a positive integer with p not dividing kappa.
QSeries u_additive(const CtxPtr& ctx, const Rat& z, long kappa, const PadicNum& alpha,
                   int M);
RatSeries u_additive_rat(unsigned p, const Rat& z, long kappa, const Rat& alpha, int M);

/// Multiplicative family exp(integral of the additive one dq/q), in 1+qK[[q]];
/// lands in 1+qR[[q]] (checked by callers).  The rational route is exact.
QSeries u_mult(const CtxPtr& ctx, const Rat& z, long kappa, const PadicNum& alpha, int M);
RatSeries u_mult_rat(unsigned p, const Rat& z, long kappa, const Rat& alpha, int M);

/// Every coefficient p-integral.
bool is_integral(const RatSeries& s, unsigned p);

/// Plain modular family (v^4 a4_inf(eta q), v^6 a6_inf(eta q)).
ModularPoint u_modular(const CtxPtr& ctx, const PadicNum& eta, const QSeries& v, int M);

/// Deformed family: q-coordinate rescaled by eta * u_mult.
ModularPoint u_modular_deformed(const CtxPtr& ctx, const Rat& z, long kappa,
                                const PadicNum& eta, const QSeries& v,
                                const Rat& alpha, int M);

/// A constructed solution family with its parameters; payload is `series`
/// for the additive/multiplicative kinds and `point` for the modular ones.
struct SolutionFamily {
    std::string kind;  // additive | multiplicative | modular_plain | modular_deformed
    Rat z;
    long kappa = 1;
    Rat alpha = 1;
    int rhs = 0;     // equation the payload solves (series kinds; 0 or -1)
    PadicNum scale;  // prefactor (zeta, beta, 1) applied to the series payload
    QSeries series;
    ModularPoint point;
};

/// Builds the named family; `scale` multiplies the multiplicative payload
/// (rhs = 0 for units of valuation-zero log, -1 when scale is a beta).
SolutionFamily build_family(const CtxPtr& ctx, const std::string& kind, const Rat& z,
                            long kappa, const Rat& alpha, const PadicNum& eta,
                            const QSeries& v, const PadicNum& scale, int rhs, int M);

}  // namespace qheat
