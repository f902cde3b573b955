#include "qheat/modforms.hpp"

namespace qheat {

RatSeries sigma_series(unsigned m, int M) {
    RatSeries r(0, M);
    for (int n = 1; n <= M; ++n) {
        Int s = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            Int dm = 1;
            for (unsigned i = 0; i < m; ++i) dm *= d;
            s += dm;
        }
        r.set_coeff(n, Rat(s));
    }
    return r;
}

RatSeries eisenstein(unsigned k, int M) {
    switch (k) {
        case 2:
            return RatSeries::constant(1, M) - sigma_series(1, M).scale(24);
        case 4:
            return RatSeries::constant(1, M) + sigma_series(3, M).scale(240);
        case 6:
            return RatSeries::constant(1, M) - sigma_series(5, M).scale(504);
        default:
            throw padic_error("eisenstein: k must be 2, 4 or 6");
    }
}

RatSeries delta_series(int M) {
    RatSeries e4 = eisenstein(4, M);
    RatSeries e6 = eisenstein(6, M);
    return (e4.pow(3) - e6.pow(2)).scale(Rat(1, 1728));
}

RatSeries eta24_series(int M) {
    RatSeries r = RatSeries::constant(1, M);
    for (int n = 1; n <= M; ++n) {
        RatSeries factor = RatSeries::constant(1, M) - RatSeries::monomial(1, n, M);
        r = r * factor.pow(24);
    }
    return r.shift_exp(1);
}

RatSeries j_series(int M) {
    // j has a 1/q pole: compute E4^3 / Delta with the Laurent window
    RatSeries e4 = eisenstein(4, M + 2);
    RatSeries d = delta_series(M + 2);
    RatSeries j = e4.pow(3) / d;
    return j.truncate(M);
}

RatSeries tate_a4(int M) { return eisenstein(4, M).scale(Rat(-1, 48)); }
RatSeries tate_a6(int M) { return eisenstein(6, M).scale(Rat(-1, 864)); }

QSeries disc(const ModularPoint& pt) {
    return -(pt.a.pow(3).scale(PadicNum::from_int(pt.a.ctx(), 64))) -
           pt.b.pow(2).scale(PadicNum::from_int(pt.b.ctx(), 432));
}

RatSeries disc(const RatSeries& a, const RatSeries& b) {
    return -(a.pow(3).scale(64)) - b.pow(2).scale(432);
}

PointType classify(const ModularPoint& pt) {
    const QSeries& a = pt.a;
    const QSeries& b = pt.b;
    if (a.is_zero() || b.is_zero()) return PointType::other;
    QSeries m = a.pow(3).scale(PadicNum::from_int(a.ctx(), 4)) +
                b.pow(2).scale(PadicNum::from_int(a.ctx(), 27));
    if (m.is_zero()) return PointType::other;
    bool a_unit = a.is_unit();
    bool b_unit = b.is_unit();
    int mlow = m.low_exponent();
    bool m_unit_coeff = m.coeff(mlow).valuation() == 0;
    if (a_unit && b_unit && mlow == 1 && m_unit_coeff && a.lowest() >= 0 && b.lowest() >= 0)
        return PointType::bad;
    if (a_unit && b_unit && mlow == 0 && m_unit_coeff) return PointType::good;
    return PointType::other;
}

ModularPoint tate_point(const CtxPtr& ctx, int M) {
    return {QSeries::from_rational(ctx, tate_a4(M)),
            QSeries::from_rational(ctx, tate_a6(M))};
}

QSeries j_invariant(const ModularPoint& pt) {
    if (!pt.a.is_laurent_unit()) throw padic_error("j_invariant: a must be a unit");
    QSeries num = pt.a.pow(3).scale(PadicNum::from_int(pt.a.ctx(), -110592));
    return num / disc(pt);
}

bool is_ordinary(const ModularPoint& pt) {
    unsigned p = pt.a.ctx()->p;
    QSeries h;
    if (p == 5)
        h = pt.a.scale(PadicNum::from_int(pt.a.ctx(), -48));
    else if (p == 7)
        h = pt.b.scale(PadicNum::from_int(pt.b.ctx(), -864));
    else
        throw padic_error("is_ordinary: closed form implemented for p in {5,7} only");
    // invertibility of E_{p-1}(a,b) in the ambient ring: some coefficient is
    // a unit; for power-series points the constant term must be the unit one
    if (classify(pt) == PointType::good) {
        return !h.coeff(0).is_zero() && h.coeff(0).valuation() == 0;
    }
    return h.min_valuation() == 0;
}

QSeries hurlburt_f1q(const ModularPoint& pt) {
    QSeries num = (pt.a * pt.b.dq()).scale(PadicNum::from_int(pt.a.ctx(), 2)) -
                  (pt.b * pt.a.dq()).scale(PadicNum::from_int(pt.a.ctx(), 3));
    return num / disc(pt);
}

}  // namespace qheat
