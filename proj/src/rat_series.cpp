#include "qheat/rat_series.hpp"

#include <algorithm>

namespace qheat {

namespace {
const Rat kZero(0);
}

long rat_valuation(const Rat& v, unsigned p) {
    if (v == 0) throw padic_error("valuation of zero");
    Int num = numerator(v), den = denominator(v);
    long r = 0;
    while (num % p == 0) {
        num /= p;
        ++r;
    }
    while (den % p == 0) {
        den /= p;
        --r;
    }
    return r;
}

RatSeries RatSeries::constant(const Rat& v, int M) {
    RatSeries r(0, M);
    r.set_coeff(0, v);
    return r;
}

RatSeries RatSeries::monomial(const Rat& v, int e, int M) {
    RatSeries r(std::min(e, 0), M);
    r.set_coeff(e, v);
    return r;
}

const Rat& RatSeries::coeff(int e) const {
    if (e < lowest_ || e > M_) return kZero;
    return c_[size_t(e - lowest_)];
}

void RatSeries::set_coeff(int e, const Rat& v) {
    if (e > M_) return;
    if (e < lowest_) {
        c_.insert(c_.begin(), size_t(lowest_ - e), Rat(0));
        lowest_ = e;
    }
    c_[size_t(e - lowest_)] = v;
}

bool RatSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
}

int RatSeries::low_exponent() const {
    for (int e = lowest_; e <= M_; ++e)
        if (coeff(e) != 0) return e;
    throw padic_error("series is zero to truncation");
}

bool RatSeries::is_unit() const { return !is_zero() && low_exponent() == 0; }

RatSeries RatSeries::operator-() const {
    RatSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

RatSeries RatSeries::operator+(const RatSeries& o) const {
    RatSeries r(std::min(lowest_, o.lowest_), std::min(M_, o.M_));
    for (int e = r.lowest_; e <= r.M_; ++e) r.set_coeff(e, coeff(e) + o.coeff(e));
    return r;
}

RatSeries RatSeries::operator-(const RatSeries& o) const { return *this + (-o); }

RatSeries RatSeries::operator*(const RatSeries& o) const {
    // coefficient at e is complete only while every split i+j=e is in-window
    int M = std::min(M_ + o.lowest_, o.M_ + lowest_);
    M = std::max(M, lowest_ + o.lowest_);
    RatSeries r(lowest_ + o.lowest_, M);
    for (int i = lowest_; i <= M_; ++i) {
        if (coeff(i) == 0) continue;
        for (int j = o.lowest_; j <= o.M_; ++j) {
            int e = i + j;
            if (e > M || e < r.lowest_) continue;
            if (o.coeff(j) == 0) continue;
            r.c_[size_t(e - r.lowest_)] += coeff(i) * o.coeff(j);
        }
    }
    return r;
}

RatSeries RatSeries::inverse() const {
    int lo = low_exponent();  // throws on zero
    // this = q^lo * u, u unit power series; invert u by recursion
    int M = M_ - lo;
    std::vector<Rat> u(size_t(M + 1), Rat(0));
    for (int e = 0; e <= M; ++e) u[size_t(e)] = coeff(e + lo);
    if (u[0] == 0) throw padic_error("internal: unit expected");
    std::vector<Rat> w(size_t(M + 1), Rat(0));
    w[0] = Rat(1) / u[0];
    for (int n = 1; n <= M; ++n) {
        Rat s(0);
        for (int k = 1; k <= n; ++k) s += u[size_t(k)] * w[size_t(n - k)];
        w[size_t(n)] = -s / u[0];
    }
    RatSeries r(-lo, std::min(M_, M - lo));
    for (int e = 0; e <= M && e - lo <= r.M_; ++e) r.set_coeff(e - lo, w[size_t(e)]);
    return r;
}

RatSeries RatSeries::operator/(const RatSeries& o) const { return *this * o.inverse(); }

RatSeries RatSeries::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RatSeries r = constant(1, M_);
    RatSeries b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

RatSeries RatSeries::scale(const Rat& v) const {
    RatSeries r = *this;
    for (auto& c : r.c_) c *= v;
    return r;
}

RatSeries RatSeries::truncate(int M) const {
    if (M >= M_) return *this;
    RatSeries r(lowest_, M);
    for (int e = lowest_; e <= M; ++e) r.set_coeff(e, coeff(e));
    return r;
}

RatSeries RatSeries::shift_exp(int k) const {
    RatSeries r(lowest_ + k, M_ + k);
    for (int e = lowest_; e <= M_; ++e) r.set_coeff(e + k, coeff(e));
    return r;
}

RatSeries RatSeries::dq() const {
    RatSeries r(lowest_, M_);
    for (int e = lowest_; e <= M_; ++e) r.set_coeff(e, Rat(e) * coeff(e));
    return r;
}

RatSeries RatSeries::deriv() const {
    RatSeries r(std::min(lowest_ - 1, 0), M_ - 1);
    for (int e = lowest_; e <= M_; ++e)
        if (e != 0) r.set_coeff(e - 1, Rat(e) * coeff(e));
    return r;
}

RatSeries RatSeries::integrate() const {
    if (lowest_ < 0)
        for (int e = lowest_; e < 0; ++e)
            if (coeff(e) != 0) throw padic_error("integrate: negative exponents present");
    if (coeff(0) != 0) throw padic_error("integrate: nonzero constant term");
    RatSeries r(0, M_);
    for (int e = 1; e <= M_; ++e) r.set_coeff(e, coeff(e) / Rat(e));
    return r;
}

RatSeries RatSeries::subst_power(int l) const {
    RatSeries r(std::max(lowest_ * l, -M_), M_);
    for (int e = lowest_; e <= M_; ++e) {
        long t = long(e) * l;
        if (t <= M_ && t >= r.lowest_) r.set_coeff(int(t), coeff(e));
    }
    return r;
}

RatSeries RatSeries::exp() const {
    if (lowest_ < 0 && !is_zero() && low_exponent() < 0)
        throw padic_error("exp: negative exponents present");
    if (coeff(0) != 0) throw padic_error("exp: nonzero constant term");
    // U' relation: n U_n = sum_{k=1..n} k F_k U_{n-k}
    RatSeries r(0, M_);
    r.set_coeff(0, 1);
    for (int n = 1; n <= M_; ++n) {
        Rat s(0);
        for (int k = 1; k <= n; ++k) s += Rat(k) * coeff(k) * r.coeff(n - k);
        r.set_coeff(n, s / Rat(n));
    }
    return r;
}

RatSeries RatSeries::log() const {
    if (coeff(0) != 1) throw padic_error("log: constant term must be 1");
    if (lowest_ < 0 && low_exponent() < 0) throw padic_error("log: Laurent tail present");
    RatSeries d = dq() / *this;
    RatSeries r(0, M_);
    for (int n = 1; n <= M_; ++n) r.set_coeff(n, d.coeff(n) / Rat(n));
    return r;
}

RatSeries RatSeries::compose(const RatSeries& g) const {
    if (g.is_zero()) {
        if (lowest_ < 0 && !is_zero() && low_exponent() < 0)
            throw padic_error("compose: pole at zero");
        return constant(coeff(0), std::min(M_, g.M_));
    }
    if (g.low_exponent() < 1) throw padic_error("compose: inner series needs lowest >= 1");
    int M = std::min(M_, g.M_);
    // Horner on the regular part
    RatSeries acc = constant(coeff(M_), M);
    for (int e = M_ - 1; e >= std::max(lowest_, 0); --e) {
        acc = acc * g;
        acc.set_coeff(0, acc.coeff(0) + coeff(e));
    }
    if (lowest_ < 0) {
        RatSeries ginv = g.inverse();
        RatSeries gk = ginv;
        for (int e = -1; e >= lowest_; --e) {
            if (coeff(e) != 0) acc = acc + gk.scale(coeff(e));
            if (e > lowest_) gk = gk * ginv;
        }
    }
    return acc;
}

RatSeries RatSeries::reverse() const {
    if (lowest_ > 1 || coeff(1) == 0 || (!is_zero() && low_exponent() != 1))
        throw padic_error("reverse: series must start with a unit times q");
    // Newton iteration h <- h - (g(h) - q)/(g'(h)), doubling accuracy
    RatSeries q = monomial(1, 1, M_);
    RatSeries h = monomial(Rat(1) / coeff(1), 1, M_);
    RatSeries d = deriv();
    int known = 1;
    while (known < M_) {
        RatSeries err = compose(h) - q;
        RatSeries corr = err / d.compose(h);
        h = h - corr;
        known = std::min(M_, 2 * known);
    }
    return h;
}

}  // namespace qheat
