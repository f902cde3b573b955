#include "qheat/qseries.hpp"

#include <algorithm>
#include <climits>

namespace qheat {

namespace {
// exact zeros carry no precision bound and can be skipped in sums
bool exact_zero(const PadicNum& v) { return v.is_zero() && v.abs_prec() == LONG_MAX; }
}  // namespace

QSeries::QSeries(CtxPtr ctx, int lowest, int M) : ctx_(std::move(ctx)), lowest_(lowest), M_(M) {
    if (M < lowest) throw padic_error("empty truncation window");
    c_.assign(size_t(M - lowest + 1), PadicNum::zero(ctx_));
}

QSeries QSeries::constant(const PadicNum& v, int M) {
    QSeries r(v.ctx(), 0, M);
    r.set_coeff(0, v);
    return r;
}

QSeries QSeries::monomial(const PadicNum& v, int e, int M) {
    QSeries r(v.ctx(), std::min(e, 0), M);
    r.set_coeff(e, v);
    return r;
}

QSeries QSeries::from_rational(const CtxPtr& ctx, const RatSeries& s, int prec) {
    QSeries r(ctx, s.lowest(), s.order());
    for (int e = s.lowest(); e <= s.order(); ++e)
        r.set_coeff(e, PadicNum::from_rational(ctx, s.coeff(e), prec));
    return r;
}

const PadicNum& QSeries::coeff(int e) const {
    static const PadicNum dummy;
    if (e < lowest_ || e > M_) {
        static thread_local PadicNum z;
        z = PadicNum::zero(ctx_);
        return z;
    }
    return c_[size_t(e - lowest_)];
}

void QSeries::set_coeff(int e, const PadicNum& v) {
    if (e > M_) return;
    if (e < lowest_) {
        c_.insert(c_.begin(), size_t(lowest_ - e), PadicNum::zero(ctx_));
        lowest_ = e;
    }
    c_[size_t(e - lowest_)] = v;
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const PadicNum& v) { return v.is_zero(); });
}

int QSeries::low_exponent() const {
    for (int e = lowest_; e <= M_; ++e)
        if (!coeff(e).is_zero()) return e;
    throw padic_error("series is zero to truncation");
}

bool QSeries::is_unit() const {
    if (is_zero()) return false;
    int lo = low_exponent();
    return lo == 0 && coeff(0).valuation() == 0;
}

bool QSeries::is_laurent_unit() const {
    if (is_zero()) return false;
    return coeff(low_exponent()).valuation() == 0;
}

int QSeries::eff_prec() const {
    long m = LONG_MAX;
    for (const auto& v : c_)
        if (!v.is_zero()) m = std::min(m, v.valuation() + v.prec());
    if (m == LONG_MAX) m = ctx_->N;
    return int(std::min<long>(m, ctx_->N));
}

long QSeries::min_valuation() const {
    long m = LONG_MAX;
    for (const auto& v : c_)
        if (!v.is_zero()) m = std::min(m, v.valuation());
    return m;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries r(ctx_, std::min(lowest_, o.lowest_), std::min(M_, o.M_));
    for (int e = r.lowest_; e <= r.M_; ++e) r.set_coeff(e, coeff(e) + o.coeff(e));
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator*(const QSeries& o) const {
    // effective low exponents: stored zeros at the bottom of the window are
    // exact and must not shrink the product window
    int la = lowest_, lb = o.lowest_;
    while (la < M_ && coeff(la).is_zero()) ++la;
    while (lb < o.M_ && o.coeff(lb).is_zero()) ++lb;
    int M = std::min(M_ + lb, o.M_ + la);
    M = std::max(M, la + lb);
    QSeries r(ctx_, la + lb, M);
    for (int i = lowest_; i <= M_; ++i) {
        if (exact_zero(coeff(i))) continue;
        for (int j = o.lowest_; j <= o.M_; ++j) {
            int e = i + j;
            if (e > M) continue;
            if (exact_zero(o.coeff(j))) continue;
            r.set_coeff(e, r.coeff(e) + coeff(i) * o.coeff(j));
        }
    }
    return r;
}

QSeries QSeries::inverse() const {
    int lo = low_exponent();
    if (coeff(lo).valuation() != 0)
        throw padic_error("inverse: leading coefficient must be a unit");
    int M = M_ - lo;
    std::vector<PadicNum> u(size_t(M + 1), PadicNum::zero(ctx_));
    for (int e = 0; e <= M; ++e) u[size_t(e)] = coeff(e + lo);
    std::vector<PadicNum> w(size_t(M + 1), PadicNum::zero(ctx_));
    PadicNum u0inv = u[0].inv();
    w[0] = u0inv;
    for (int n = 1; n <= M; ++n) {
        PadicNum s = PadicNum::zero(ctx_);
        for (int k = 1; k <= n; ++k) s = s + u[size_t(k)] * w[size_t(n - k)];
        w[size_t(n)] = -(s * u0inv);
    }
    int outM = std::min(M_, M - lo);
    outM = std::max(outM, -lo);
    QSeries r(ctx_, -lo, outM);
    for (int e = 0; e <= M && e - lo <= r.M_; ++e) r.set_coeff(e - lo, w[size_t(e)]);
    return r;
}

QSeries QSeries::operator/(const QSeries& o) const { return *this * o.inverse(); }

QSeries QSeries::pow(const Int& e) const {
    if (e < 0) return inverse().pow(-e);
    PadicNum one = PadicNum::from_int(ctx_, 1);
    QSeries r = constant(one, M_);
    QSeries b = *this;
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = r * b;
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

QSeries QSeries::scale(const PadicNum& v) const {
    QSeries r = *this;
    for (auto& c : r.c_) c = c * v;
    return r;
}

QSeries QSeries::truncate(int M) const {
    if (M >= M_) return *this;
    QSeries r(ctx_, std::min(lowest_, M), M);
    for (int e = r.lowest_; e <= M; ++e) r.set_coeff(e, coeff(e));
    return r;
}

QSeries QSeries::shift_exp(int k) const {
    QSeries r(ctx_, lowest_ + k, M_ + k);
    for (int e = lowest_; e <= M_; ++e) r.set_coeff(e + k, coeff(e));
    return r;
}

QSeries QSeries::dq() const {
    QSeries r(ctx_, lowest_, M_);
    for (int e = lowest_; e <= M_; ++e)
        r.set_coeff(e, coeff(e) * PadicNum::from_int(ctx_, e));
    return r;
}

QSeries QSeries::deriv() const {
    QSeries r(ctx_, std::min(lowest_ - 1, 0), M_ - 1);
    for (int e = lowest_; e <= M_; ++e)
        if (e != 0) r.set_coeff(e - 1, coeff(e) * PadicNum::from_int(ctx_, e));
    return r;
}

QSeries QSeries::integrate() const {
    for (int e = lowest_; e < 0; ++e)
        if (!coeff(e).is_zero()) throw padic_error("integrate: negative exponents present");
    if (!coeff(0).is_zero()) throw padic_error("integrate: nonzero constant term");
    QSeries r(ctx_, 0, M_);
    for (int e = 1; e <= M_; ++e)
        r.set_coeff(e, coeff(e) / PadicNum::from_int(ctx_, e));
    return r;
}

QSeries QSeries::phi_star() const {
    // q -> q^p: known out to p*M, with exact zeros at non-multiples of p
    long p = ctx_->p;
    QSeries r(ctx_, int(lowest_ * p), int(M_ * p));
    for (int e = lowest_; e <= M_; ++e) r.set_coeff(int(e * p), coeff(e).frobenius());
    return r;
}

QSeries QSeries::dp() const {
    QSeries num = phi_star() - pow(ctx_->p);
    QSeries r(ctx_, num.lowest_, num.M_);
    for (int e = num.lowest_; e <= num.M_; ++e) {
        const PadicNum& v = num.coeff(e);
        if (v.is_zero()) continue;
        r.set_coeff(e, v.shift(-1));
    }
    return r;
}

QSeries QSeries::phi_p() const { return phi_star(); }

QSeries QSeries::phi_l(unsigned l) const {
    if (l == ctx_->p) throw padic_error("phi_l: l must differ from p");
    for (unsigned d = 2; d * d <= l; ++d)
        if (l % d == 0) throw padic_error("phi_l: l must be prime");
    QSeries r(ctx_, int(lowest_ * long(l)), int(M_ * long(l)));
    for (int e = lowest_; e <= M_; ++e) {
        long t = long(e) * l;
        r.set_coeff(int(t), coeff(e));
    }
    return r;
}

QSeries QSeries::exp() const {
    for (int e = lowest_; e < 0; ++e)
        if (!coeff(e).is_zero()) throw padic_error("exp: negative exponents present");
    PadicNum u0;
    if (coeff(0).is_zero())
        u0 = PadicNum::from_int(ctx_, 1);
    else
        u0 = pexp(coeff(0));
    QSeries r(ctx_, 0, M_);
    r.set_coeff(0, u0);
    for (int n = 1; n <= M_; ++n) {
        PadicNum s = PadicNum::zero(ctx_);
        for (int k = 1; k <= n; ++k) {
            if (exact_zero(coeff(k)) || exact_zero(r.coeff(n - k))) continue;
            s = s + PadicNum::from_int(ctx_, k) * coeff(k) * r.coeff(n - k);
        }
        r.set_coeff(n, s / PadicNum::from_int(ctx_, n));
    }
    return r;
}

QSeries QSeries::log() const {
    if (!is_unit()) throw padic_error("log: unit series required");
    PadicNum l0 = plog(coeff(0));  // checks u0 == 1 mod p
    // strip exact-zero padding below the unit constant so the division
    // window below is not underestimated
    QSeries t(ctx_, 0, M_);
    for (int e = 0; e <= M_; ++e) t.set_coeff(e, coeff(e));
    QSeries d = t.dq() / t;
    QSeries r(ctx_, 0, d.order());
    r.set_coeff(0, l0);
    for (int n = 1; n <= d.order(); ++n)
        r.set_coeff(n, d.coeff(n) / PadicNum::from_int(ctx_, n));
    return r;
}

QSeries QSeries::compose(const QSeries& g) const {
    if (g.is_zero()) {
        for (int e = lowest_; e < 0; ++e)
            if (!coeff(e).is_zero()) throw padic_error("compose: pole at zero");
        return constant(coeff(0), std::min(M_, g.M_));
    }
    if (g.low_exponent() < 1) throw padic_error("compose: inner series needs lowest >= 1");
    int M = std::min(M_, g.M_);
    QSeries acc = constant(coeff(M_), M);
    for (int e = M_ - 1; e >= std::max(lowest_, 0); --e) {
        acc = acc * g;
        acc.set_coeff(0, acc.coeff(0) + coeff(e));
    }
    if (lowest_ < 0) {
        QSeries ginv = g.inverse();
        QSeries gk = ginv;
        for (int e = -1; e >= lowest_; --e) {
            if (!coeff(e).is_zero()) acc = acc + gk.scale(coeff(e));
            if (e > lowest_) gk = gk * ginv;
        }
    }
    return acc;
}

QSeries QSeries::reverse() const {
    if (is_zero() || low_exponent() != 1 || coeff(1).valuation() != 0)
        throw padic_error("reverse: series must start with a unit times q");
    PadicNum one = PadicNum::from_int(ctx_, 1);
    QSeries q = monomial(one, 1, M_);
    QSeries h = monomial(coeff(1).inv(), 1, M_);
    QSeries d = deriv();
    int known = 1;
    while (known < M_) {
        QSeries err = compose(h) - q;
        QSeries corr = err / d.compose(h);
        h = h - corr;
        known = std::min(M_, 2 * known);
    }
    return h;
}

bool QSeries::congruent(const QSeries& o, int k) const {
    QSeries d = *this - o;
    long v = d.min_valuation();
    return v >= k;
}

}  // namespace qheat
