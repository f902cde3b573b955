#include "qheat/convection.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

namespace qheat {

QSeries psi_q(const QSeries& u) { return u.dq() / u; }

QSeries psi_p(const QSeries& u) {
    const CtxPtr& ctx = u.ctx();
    QSeries ratio = u.phi_star() / u.pow(Int(ctx->p));
    QSeries lg = ratio.log();
    return lg.scale(PadicNum::from_rational(ctx, Rat(1, ctx->p)));
}

PadicNum psi_p_const(const PadicNum& c) {
    PadicNum ratio = c.frobenius() / c.pow(Int(c.ctx()->p));
    return plog(ratio).shift(-1);
}

EquationParams EquationParams::make(const CtxPtr& ctx, long kappa, const Rat& z,
                                    int rhs) {
    EquationParams eq;
    eq.kappa = PadicNum::from_int(ctx, Int(kappa));
    eq.z = PadicNum::from_rational(ctx, z);
    eq.rhs = rhs;
    eq.kappa_integer = kappa > 0;
    eq.kappa_int = kappa;
    return eq;
}

EquationParams EquationParams::make(const CtxPtr& ctx, const Rat& kappa, const Rat& z,
                                    int rhs) {
    EquationParams eq;
    eq.kappa = PadicNum::from_rational(ctx, kappa);
    eq.z = PadicNum::from_rational(ctx, z);
    eq.rhs = rhs;
    return eq;
}

ResidualReport residual(const QSeries& u, const EquationParams& eq, int tolerance) {
    const CtxPtr& ctx = u.ctx();
    QSeries yp = psi_p(u);
    QSeries r = psi_q(u) + yp.scale(eq.kappa) + yp.phi_star().scale(eq.kappa * eq.z);
    if (eq.rhs != 0)
        r = r - QSeries::constant(PadicNum::from_int(ctx, Int(eq.rhs)), r.order());
    // certified bound: every coefficient is O(p^mv)
    long mv = LONG_MAX;
    for (int e = r.lowest(); e <= r.order(); ++e) {
        const PadicNum& c = r.coeff(e);
        mv = std::min(mv, c.is_zero() ? c.abs_prec() : c.valuation());
    }
    return {r, mv, tolerance, mv >= tolerance};
}

PadicNum solve_beta(const EquationParams& eq) {
    const CtxPtr& ctx = eq.kappa.ctx();
    if (!eq.kappa.is_unit()) throw padic_error("solve_beta: kappa must be a unit");
    if (!eq.z.is_zero() && eq.z.valuation() < 1)
        throw padic_error("solve_beta: z must lie in pZ_p");
    PadicNum minus_kinv = -eq.kappa.inv();
    // y + z phi(y) = -1/kappa; the z-term contracts by v(z) >= 1
    PadicNum y = minus_kinv;
    for (int i = 0; i < ctx->N + 2; ++i) y = minus_kinv - eq.z * y.frobenius();
    // phi(b) - p b = p y, i.e. b = p phi^{-1}(b + y); contracts by one digit
    PadicNum b = PadicNum::zero(ctx);
    for (int i = 0; i < ctx->N + 2; ++i) b = (b + y).frobenius_inv().shift(1);
    return pexp(b);
}

ModularPoint encode_iota(const QSeries& u, const QSeries& v, int M) {
    if (!u.is_unit() || !v.is_unit())
        throw padic_error("encode_iota: u, v must be unit power series");
    const CtxPtr& ctx = u.ctx();
    int W = M > 0 ? M : u.order();
    if (W > u.order()) W = u.order();
    QSeries uq = u.truncate(W > 0 ? W - 1 : 0).shift_exp(1);
    QSeries a4 = QSeries::from_rational(ctx, tate_a4(W));
    QSeries a6 = QSeries::from_rational(ctx, tate_a6(W));
    QSeries a = a4.compose(uq);
    QSeries b = a6.compose(uq);
    return {a * v.pow(4), b * v.pow(6)};
}

namespace {

// shared exact fixtures, read-only after first computation per window
const RatSeries& sigma_rat(int Ws) {
    static std::map<int, RatSeries> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(Ws);
    if (it == cache.end()) {
        RatSeries invj =
            (delta_series(Ws + 2) / eisenstein(4, Ws + 2).pow(3)).truncate(Ws);
        it = cache.emplace(Ws, invj.reverse()).first;
    }
    return it->second;
}

// constant square root of a unit by residue search + Newton; empty optional
// when the residue is a non-square
std::optional<PadicNum> unit_sqrt(const PadicNum& c) {
    const CtxPtr& ctx = c.ctx();
    unsigned p = ctx->p;
    long count = 1;
    for (int i = 0; i < ctx->f; ++i) count *= p;
    PadicNum x0;
    bool found = false;
    for (long code = 1; code < count && !found; ++code) {
        std::vector<Int> v(ctx->f);
        long t = code;
        for (int i = 0; i < ctx->f; ++i) {
            v[i] = t % p;
            t /= p;
        }
        PadicNum cand = PadicNum::from_vector(ctx, v);
        if ((cand * cand).congruent(c, 1)) {
            x0 = cand;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    PadicNum half = PadicNum::from_rational(ctx, Rat(1, 2));
    for (int i = 0; i < ctx->N + 2; ++i) x0 = (x0 + c / x0) * half;
    return x0;
}

}  // namespace

DecodeResult decode_iota(const ModularPoint& pt) {
    if (classify(pt) != PointType::bad)
        throw padic_error("decode_iota: point is not bad-type");
    const CtxPtr& ctx = pt.a.ctx();
    int M = pt.a.order();
    PadicNum four = PadicNum::from_int(ctx, 4);
    PadicNum c27 = PadicNum::from_int(ctx, 27);
    QSeries a3 = pt.a.pow(3);
    QSeries t = (a3.scale(four) + pt.b.pow(2).scale(c27)) /
                a3.scale(PadicNum::from_int(ctx, 6912));
    // sigma = compositional inverse of 1/j_inf = Delta/E4^3 = q - 744q^2 + ...
    int Ws = M + 1;
    QSeries sigma = QSeries::from_rational(ctx, sigma_rat(Ws));
    QSeries u = sigma.compose(t).shift_exp(-1);

    QSeries uq = u.truncate(M > 0 ? M - 1 : 0).shift_exp(1);
    QSeries a4c = QSeries::from_rational(ctx, tate_a4(M)).compose(uq);
    QSeries a6c = QSeries::from_rational(ctx, tate_a6(M)).compose(uq);
    QSeries v4 = pt.a / a4c;
    QSeries v6 = pt.b / a6c;
    QSeries v2 = v6 / v4;

    DecodeResult res{u, v2, false, QSeries()};
    auto c = unit_sqrt(v2.coeff(0));
    if (c) {
        res.v_exists = true;
        PadicNum half = PadicNum::from_rational(ctx, Rat(1, 2));
        QSeries x = QSeries::constant(*c, v2.order());
        int iters = 2;
        for (int m = 1; m <= v2.order(); m *= 2) ++iters;
        for (int i = 0; i < iters; ++i) x = (x + v2 / x).scale(half);
        res.v = x;
    }
    return res;
}

SolveCensus term_solver(const EquationParams& eq, const PadicNum& c0, int M,
                        std::optional<PadicNum> free_value) {
    const CtxPtr& ctx = eq.kappa.ctx();
    unsigned p = ctx->p;
    // constant-term constraint on c0
    PadicNum yc = psi_p_const(c0);
    PadicNum lhs = eq.kappa * yc + eq.kappa * eq.z * yc.frobenius();
    if (!lhs.congruent(PadicNum::from_int(ctx, Int(eq.rhs)), ctx->N - 2))
        throw padic_error("term_solver: c0 violates the constant-term constraint");

    PadicNum pinv = PadicNum::from_rational(ctx, Rat(1, p));
    PadicNum A = eq.kappa * pinv - eq.kappa * eq.z;
    PadicNum B = eq.kappa * eq.z * pinv;

    SolveCensus cen;
    cen.w = QSeries(ctx, 0, M);
    for (int n = 1; n <= M; ++n) {
        PadicNum rhs = PadicNum::zero(ctx);
        if (n % int(p) == 0) rhs = rhs + A * cen.w.coeff(n / int(p)).frobenius();
        if (n % int(p * p) == 0)
            rhs = rhs + B * cen.w.coeff(n / int(p * p)).frobenius().frobenius();
        rhs = -rhs;
        bool rhs_zero = rhs.is_zero() || rhs.valuation() >= ctx->N - 1;

        bool pivot_zero;
        long pv;
        PadicNum pivot = PadicNum::from_int(ctx, Int(n)) - eq.kappa;
        if (eq.kappa_integer) {
            pivot_zero = (long(n) == eq.kappa_int);
            if (!pivot_zero) {
                long d = long(n) - eq.kappa_int;
                pv = 0;
                while (d % long(p) == 0) {
                    d /= long(p);
                    ++pv;
                }
            } else {
                pv = -1;
            }
        } else {
            pivot_zero = pivot.is_zero();
            pv = pivot_zero ? -1 : pivot.valuation();
        }

        CensusRow row{n, pv, PivotStatus::determined};
        if (pivot_zero) {
            if (rhs_zero) {
                row.status = PivotStatus::free_param;
                cen.free_positions.push_back(n);
                ++cen.parameter_count;
                if (free_value) cen.w.set_coeff(n, *free_value);
            } else {
                row.status = PivotStatus::obstructed;
                cen.obstructed_positions.push_back(n);
            }
        } else if (rhs_zero) {
            // w_n = 0 exactly
        } else {
            cen.w.set_coeff(n, rhs / pivot);
            // non-unit pivot with a right side it does not divide in R:
            // solved over K, flagged for the census
            if (pv > 0 && rhs.valuation() < pv) {
                row.status = PivotStatus::obstructed;
                cen.obstructed_positions.push_back(n);
            }
        }
        cen.rows.push_back(row);
    }
    cen.solution = cen.w.exp().scale(c0);
    return cen;
}

}  // namespace qheat
