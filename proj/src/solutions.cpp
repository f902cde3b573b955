#include "qheat/solutions.hpp"

#include "qheat/convection.hpp"

namespace qheat {

std::vector<Rat> b_table(int n, const Rat& x, const Rat& y) {
    std::vector<Rat> t;
    t.reserve(size_t(n + 2));
    t.push_back(0);  // b_{-1}
    t.push_back(1);  // b_0
    Rat yk = 1;
    for (int k = 1; k <= n; ++k) {
        yk *= y;
        if (yk == 1) throw padic_error("b recurrence: y^k = 1 in denominator");
        Rat d = Rat(1) - yk;
        t.push_back((Rat(1) - x) / d * t[size_t(k)] + x / d * t[size_t(k) - 1]);
    }
    return t;
}

Rat b_eval(int n, const Rat& x, const Rat& y) {
    if (n < -1) throw padic_error("b_eval: n >= -1 required");
    return b_table(std::max(n, 0), x, y)[size_t(n + 1)];
}

Rat b_closed_y0(int n, const Rat& x) {
    Rat xp = 1;
    for (int i = 0; i <= n; ++i) xp *= x;
    Rat sign = (n % 2 == 0) ? 1 : -1;
    return (Rat(1) + sign * xp) / (Rat(1) + x);
}

Rat b_closed_x0(int n, const Rat& y) {
    Rat d = 1, yk = 1;
    for (int k = 1; k <= n; ++k) {
        yk *= y;
        d *= (Rat(1) - yk);
    }
    return Rat(1) / d;
}

std::vector<Rat> b_x_poly(int n) {
    // y = 0: b_n = (1-x) b_{n-1} + x b_{n-2}
    std::vector<Rat> bm{Rat(0)};  // b_{-1}
    std::vector<Rat> b{Rat(1)};   // b_0
    for (int k = 1; k <= n; ++k) {
        std::vector<Rat> nxt(size_t(k + 1), Rat(0));
        for (size_t i = 0; i < b.size(); ++i) {
            nxt[i] += b[i];
            nxt[i + 1] -= b[i];
        }
        for (size_t i = 0; i < bm.size(); ++i) nxt[i + 1] += bm[i];
        bm = std::move(b);
        b = std::move(nxt);
    }
    return b;
}

Rat b_dx_at00(int n) {
    auto p = b_x_poly(n);
    return p.size() > 1 ? p[1] : Rat(0);
}

namespace {

void check_kappa(unsigned p, long kappa) {
    if (kappa <= 0 || kappa % long(p) == 0)
        throw padic_error("family requires kappa a positive integer prime to p");
}

}  // namespace

RatSeries u_additive_rat(unsigned p, const Rat& z, long kappa, const Rat& alpha, int M) {
    check_kappa(p, kappa);
    RatSeries r(0, M);
    Rat x = Rat(long(p)) * z, y = long(p);
    long e = kappa;
    for (int n = 0; e <= M; ++n, e *= long(p))
        r.set_coeff(int(e), b_eval(n, x, y) * alpha);
    return r;
}

QSeries u_additive(const CtxPtr& ctx, const Rat& z, long kappa, const PadicNum& alpha,
                   int M) {
    check_kappa(ctx->p, kappa);
    QSeries r(ctx, 0, M);
    Rat x = Rat(long(ctx->p)) * z, y = long(ctx->p);
    long e = kappa;
    PadicNum a = alpha;
    for (int n = 0; e <= M; ++n, e *= long(ctx->p)) {
        r.set_coeff(int(e), PadicNum::from_rational(ctx, b_eval(n, x, y), ctx->cap) * a);
        a = a.frobenius();
    }
    return r;
}

RatSeries u_mult_rat(unsigned p, const Rat& z, long kappa, const Rat& alpha, int M) {
    RatSeries add = u_additive_rat(p, z, kappa, alpha, M);
    return add.integrate().exp();
}

QSeries u_mult(const CtxPtr& ctx, const Rat& z, long kappa, const PadicNum& alpha, int M) {
    QSeries add = u_additive(ctx, z, kappa, alpha, M);
    return add.integrate().exp();
}

bool is_integral(const RatSeries& s, unsigned p) {
    for (int e = s.lowest(); e <= s.order(); ++e)
        if (s.coeff(e) != 0 && rat_valuation(s.coeff(e), p) < 0) return false;
    return true;
}

ModularPoint u_modular(const CtxPtr&, const PadicNum& eta, const QSeries& v, int M) {
    if (!eta.is_unit()) throw padic_error("u_modular: eta must be a unit");
    return encode_iota(QSeries::constant(eta, M), v, M);
}

ModularPoint u_modular_deformed(const CtxPtr& ctx, const Rat& z, long kappa,
                                const PadicNum& eta, const QSeries& v,
                                const Rat& alpha, int M) {
    if (!eta.is_unit()) throw padic_error("u_modular: eta must be a unit");
    QSeries um = QSeries::from_rational(ctx, u_mult_rat(ctx->p, z, kappa, alpha, M));
    return encode_iota(um.scale(eta), v, M);
}

SolutionFamily build_family(const CtxPtr& ctx, const std::string& kind, const Rat& z,
                            long kappa, const Rat& alpha, const PadicNum& eta,
                            const QSeries& v, const PadicNum& scale, int rhs, int M) {
    SolutionFamily fam;
    fam.kind = kind;
    fam.z = z;
    fam.kappa = kappa;
    fam.alpha = alpha;
    fam.rhs = rhs;
    fam.scale = scale;
    if (kind == "additive") {
        fam.series = QSeries::from_rational(ctx, u_additive_rat(ctx->p, z, kappa, alpha, M));
    } else if (kind == "multiplicative") {
        fam.series =
            QSeries::from_rational(ctx, u_mult_rat(ctx->p, z, kappa, alpha, M)).scale(scale);
    } else if (kind == "modular_plain") {
        fam.point = u_modular(ctx, eta, v, M);
    } else if (kind == "modular_deformed") {
        fam.point = u_modular_deformed(ctx, z, kappa, eta, v, alpha, M);
    } else {
        throw padic_error("build_family: unknown kind " + kind);
    }
    return fam;
}

}  // namespace qheat
