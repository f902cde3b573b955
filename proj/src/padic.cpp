#include "qheat/padic.hpp"

#include <algorithm>
#include <climits>

namespace qheat {

namespace {

Int ipow(const Int& b, unsigned e) {
    Int r = 1, x = b;
    unsigned k = e;
    while (k) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// v_p of a nonzero integer.
long int_val(Int a, unsigned p) {
    if (a == 0) throw padic_error("valuation of zero integer");
    long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

Int strip_p(Int a, unsigned p, long& v) {
    v = 0;
    while (a != 0 && a % p == 0) {
        a /= p;
        ++v;
    }
    return a;
}

// Extended gcd; returns g and fills x with a^{-1} mod m when g == 1.
Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = mod_reduce(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw padic_error("element not invertible");
    return mod_reduce(old_s, m);
}

// --- polynomial helpers over Z/m, used for the unramified extension ---

using PolyV = std::vector<Int>;

void poly_trim(PolyV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyV poly_mulmod(const PolyV& a, const PolyV& b, const PolyV& modulus, const Int& m) {
    // modulus holds c_0..c_{f-1} of monic m(w); reduce w^f = -(c_{f-1}w^{f-1}+...+c_0)
    size_t f = modulus.size();
    std::vector<Int> prod(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    for (size_t d = prod.size(); d-- > f;) {
        if (prod[d] == 0) continue;
        Int c = prod[d];
        prod[d] = 0;
        for (size_t i = 0; i < f; ++i) prod[d - f + i] -= c * modulus[i];
    }
    prod.resize(f);
    for (auto& c : prod) c = mod_reduce(c, m);
    return prod;
}

PolyV poly_powmod(PolyV base, Int e, const PolyV& modulus, const Int& m) {
    PolyV r(modulus.size(), 0);
    r[0] = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mulmod(r, base, modulus, m);
        base = poly_mulmod(base, base, modulus, m);
        e >>= 1;
    }
    return r;
}

// gcd of polynomials over F_p (coefficient vectors, lowest degree first).
PolyV poly_gcd_fp(PolyV a, PolyV b, const Int& p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a mod b
        Int lead_inv = mod_inverse(b.back(), p);
        while (a.size() >= b.size()) {
            Int c = mod_reduce(a.back() * lead_inv, p);
            if (c != 0) {
                size_t off = a.size() - b.size();
                for (size_t i = 0; i < b.size(); ++i)
                    a[off + i] = mod_reduce(a[off + i] - c * b[i], p);
            }
            a.pop_back();
            poly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
        poly_trim(b);
    }
    return a;
}

bool is_irreducible_fp(const PolyV& modulus, unsigned p, int f) {
    Int P = p;
    // x^(p^f) == x mod (m, p)
    PolyV x{Int(0), Int(1)};
    x.resize(modulus.size(), 0);
    PolyV xq = poly_powmod(x, ipow(P, unsigned(f)), modulus, P);
    PolyV diff = xq;
    diff[1] = mod_reduce(diff[1] - 1, P);
    poly_trim(diff);
    if (!diff.empty()) return false;
    // gcd(x^(p^(f/l)) - x, m) == 1 for prime divisors l of f
    for (int l = 2; l <= f; ++l) {
        if (f % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        PolyV xs = poly_powmod(x, ipow(P, unsigned(f / l)), modulus, P);
        PolyV d2 = xs;
        d2[1] = mod_reduce(d2[1] - 1, P);
        PolyV full = modulus;  // monic modulus as full poly c_0..c_{f-1}, 1
        full.push_back(1);
        PolyV g = poly_gcd_fp(d2, full, P);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

Int PadicContext::pow_p(int k) const { return ipow(Int(p), unsigned(k)); }

CtxPtr make_context(unsigned p, int N, int f, int extra) {
    if (p < 5) throw padic_error("p must be a prime >= 5");
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw padic_error("p must be prime");
    if (N < 1) throw padic_error("N must be >= 1");
    if (f < 1) throw padic_error("f must be >= 1");

    auto ctx = std::make_shared<PadicContext>();
    ctx->p = p;
    ctx->N = N;
    ctx->f = f;
    ctx->cap = (f == 1) ? INT_MAX / 2 : N + extra;
    if (f == 1) return ctx;

    // find a monic irreducible m(w) = w^f + w + c or w^f + c mod p
    PolyV modulus;
    bool found = false;
    for (Int c = 1; c < Int(p) && !found; ++c) {
        for (int lin = 0; lin <= 1 && !found; ++lin) {
            PolyV m(size_t(f), 0);
            m[0] = c;
            if (lin && f >= 2) m[1] = 1;
            if (is_irreducible_fp(m, p, f)) {
                modulus = m;
                found = true;
            }
        }
    }
    if (!found) {
        // fall back to random search
        Int seed = 12345;
        while (!found) {
            PolyV m(size_t(f), 0);
            for (auto& c : m) {
                seed = (seed * 1103515245 + 12345) % 2147483648;
                c = seed % p;
            }
            if (m[0] == 0) m[0] = 1;
            if (is_irreducible_fp(m, p, f)) {
                modulus = m;
                found = true;
            }
        }
    }
    ctx->modulus = modulus;

    // Frobenius image of w: the root of m congruent to w^p mod p, lifted by
    // Newton iteration r <- r - m(r)/m'(r) in the extension ring mod p^cap.
    Int M = ctx->pow_p(ctx->cap);
    PolyV w{Int(0), Int(1)};
    w.resize(size_t(f), 0);
    PolyV r = poly_powmod(w, Int(p), modulus, M);
    auto eval_m = [&](const PolyV& x) {
        // m(x) = x^f + sum c_i x^i
        PolyV acc = poly_powmod(x, Int(f), modulus, M);
        PolyV xp(size_t(f), 0);
        xp[0] = 1;
        for (int i = 0; i < f; ++i) {
            for (int j = 0; j < f; ++j)
                acc[size_t(j)] = mod_reduce(acc[size_t(j)] + modulus[size_t(i)] * xp[size_t(j)], M);
            xp = poly_mulmod(xp, x, modulus, M);
        }
        return acc;
    };
    auto eval_mprime = [&](const PolyV& x) {
        // m'(x) = f x^{f-1} + sum i c_i x^{i-1}
        PolyV acc(size_t(f), 0);
        PolyV xp(size_t(f), 0);
        xp[0] = 1;
        for (int i = 1; i < f; ++i) {
            for (int j = 0; j < f; ++j)
                acc[size_t(j)] = mod_reduce(acc[size_t(j)] + Int(i) * modulus[size_t(i)] * xp[size_t(j)], M);
            xp = poly_mulmod(xp, x, modulus, M);
        }
        for (int j = 0; j < f; ++j)
            acc[size_t(j)] = mod_reduce(acc[size_t(j)] + Int(f) * xp[size_t(j)], M);
        return acc;
    };
    auto inv_ring = [&](const PolyV& x) {
        // inverse mod p, then Newton lift y <- y(2 - xy) to p^cap
        Int P = p;
        PolyV y;
        {
            // invert in F_p[x]/(m): use Fermat, y = x^(p^f - 2)
            PolyV xr = x;
            for (auto& c : xr) c = mod_reduce(c, P);
            y = poly_powmod(xr, ipow(P, unsigned(f)) - 2, modulus, P);
        }
        Int mk = P;
        while (mk < M) {
            mk = mk * mk;
            if (mk > M) mk = M;
            PolyV xy = poly_mulmod(x, y, modulus, mk);
            PolyV two_minus(size_t(f), 0);
            for (int j = 0; j < f; ++j) two_minus[size_t(j)] = mod_reduce(-xy[size_t(j)], mk);
            two_minus[0] = mod_reduce(two_minus[0] + 2, mk);
            y = poly_mulmod(y, two_minus, modulus, mk);
        }
        return y;
    };
    for (int it = 0; it < ctx->cap + 2; ++it) {
        PolyV mr = eval_m(r);
        bool zero = std::all_of(mr.begin(), mr.end(), [](const Int& c) { return c == 0; });
        if (zero) break;
        PolyV corr = poly_mulmod(mr, inv_ring(eval_mprime(r)), modulus, M);
        for (int j = 0; j < f; ++j) r[size_t(j)] = mod_reduce(r[size_t(j)] - corr[size_t(j)], M);
    }
    ctx->frob_w = r;
    return ctx;
}

// ---------------------------------------------------------------------------

void PadicNum::normalize() {
    if (zero_) return;
    int f = ctx_->f;
    if (prec_ <= 0) {
        zero_ = true;
        zabs_ = val_ + prec_;
        return;
    }
    Int m = ctx_->pow_p(prec_);
    for (auto& c : u_) c = mod_reduce(c, m);
    long v = LONG_MAX;
    for (const auto& c : u_)
        if (c != 0) v = std::min(v, int_val(c, ctx_->p));
    if (v == LONG_MAX || v >= prec_) {
        // vanishes at this precision: 0 + O(p^(val+prec))
        zero_ = true;
        zabs_ = val_ + prec_;
        u_.assign(size_t(f), 0);
        return;
    }
    if (v > 0) {
        Int pv = ctx_->pow_p(int(v));
        for (auto& c : u_) c /= pv;
        val_ += v;
        prec_ -= int(v);
    }
}

PadicNum PadicNum::zero(const CtxPtr& ctx) {
    PadicNum r;
    r.ctx_ = ctx;
    r.zero_ = true;
    r.u_.assign(size_t(ctx->f), 0);
    return r;
}

PadicNum PadicNum::from_vector(const CtxPtr& ctx, std::vector<Int> v, int prec) {
    PadicNum r;
    r.ctx_ = ctx;
    r.zero_ = false;
    r.val_ = 0;
    r.prec_ = (prec < 0) ? ctx->N : std::min(prec, ctx->cap);
    v.resize(size_t(ctx->f), 0);
    r.u_ = std::move(v);
    r.normalize();
    return r;
}

PadicNum PadicNum::from_int(const CtxPtr& ctx, const Int& v, int prec) {
    std::vector<Int> c(size_t(ctx->f), 0);
    c[0] = v;
    return from_vector(ctx, std::move(c), prec);
}

PadicNum PadicNum::from_rational(const CtxPtr& ctx, const Rat& v, int prec) {
    Int num = numerator(v), den = denominator(v);
    if (num == 0) return zero(ctx);
    long vn, vd;
    num = strip_p(num, ctx->p, vn);
    den = strip_p(den, ctx->p, vd);
    int pr = (prec < 0) ? ctx->N : std::min(prec, ctx->cap);
    Int m = ctx->pow_p(pr);
    Int u = mod_reduce(num * mod_inverse(den, m), m);
    PadicNum r = from_int(ctx, u, pr);
    r.val_ += vn - vd;
    return r;
}

long PadicNum::valuation() const {
    if (zero_) throw padic_error("valuation of exact zero");
    return val_;
}

std::vector<Int> PadicNum::residue(int k) const {
    std::vector<Int> out(size_t(ctx_->f), 0);
    if (zero_) {
        if (k > zabs_) throw padic_error("requested residue beyond known precision");
        return out;
    }
    if (val_ < 0) throw padic_error("residue of non-integral element");
    if (k > val_ + prec_) throw padic_error("requested residue beyond known precision");
    Int m = ctx_->pow_p(k);
    Int pv = ctx_->pow_p(int(val_));
    for (size_t i = 0; i < out.size(); ++i) out[i] = mod_reduce(u_[i] * pv, m);
    return out;
}

Int PadicNum::residue_scalar(int k) const { return residue(k)[0]; }

std::string PadicNum::str() const {
    if (zero_) return "0";
    std::string s;
    if (val_ >= 0) {
        int k = std::min(ctx_->N, int(val_) + prec_);
        auto r = residue(k);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) s += ",";
            s += r[i].str();
        }
    } else {
        // unit residue with an explicit p-power denominator
        for (size_t i = 0; i < u_.size(); ++i) {
            if (i) s += ",";
            s += u_[i].str();
        }
        s += "/p^" + std::to_string(-val_);
    }
    return s;
}

PadicNum PadicNum::operator-() const {
    if (zero_) return *this;
    PadicNum r = *this;
    Int m = ctx_->pow_p(prec_);
    for (auto& c : r.u_) c = mod_reduce(-c, m);
    return r;
}

namespace {

long sat_add(long a, long b) {
    if (a == LONG_MAX || b == LONG_MAX) return LONG_MAX;
    return a + b;
}

// 0 + O(p^k)
PadicNum fuzzy_zero(const CtxPtr& ctx, long k) {
    if (k == LONG_MAX) return PadicNum::zero(ctx);
    // a vanished residue at absolute precision 1, shifted to level k
    PadicNum z = PadicNum::from_vector(ctx, std::vector<Int>(size_t(ctx->f), 0), 1);
    return z.shift(k - 1);
}

}  // namespace

PadicNum PadicNum::operator+(const PadicNum& o) const {
    if (zero_ && o.zero_) return fuzzy_zero(ctx_, std::min(zabs_, o.zabs_));
    if (zero_) {
        // cap the other operand at this zero's absolute precision
        if (zabs_ == LONG_MAX) return o;
        if (zabs_ <= o.val_) return fuzzy_zero(ctx_, zabs_);
        return o.truncate(int(zabs_ - o.val_));
    }
    if (o.zero_) return o + *this;
    const PadicNum* a = this;
    const PadicNum* b = &o;
    if (a->val_ > b->val_) std::swap(a, b);
    long shift = b->val_ - a->val_;
    int k = int(std::min<long>(a->prec_, shift + b->prec_));
    if (k <= 0) return fuzzy_zero(ctx_, a->val_ + k);
    PadicNum r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.val_ = a->val_;
    r.prec_ = int(k);
    r.u_.assign(size_t(ctx_->f), 0);
    Int ps = ctx_->pow_p(int(std::min<long>(shift, k)));
    Int m = ctx_->pow_p(int(k));
    for (size_t i = 0; i < r.u_.size(); ++i) {
        Int bi = (shift >= k) ? Int(0) : mod_reduce(b->u_[i] * ps, m);
        r.u_[i] = mod_reduce(a->u_[i] + bi, m);
    }
    r.normalize();
    return r;
}

PadicNum PadicNum::operator-(const PadicNum& o) const { return *this + (-o); }

PadicNum PadicNum::operator*(const PadicNum& o) const {
    if (zero_ && o.zero_) return fuzzy_zero(ctx_, sat_add(zabs_, o.zabs_));
    if (zero_) return fuzzy_zero(ctx_, sat_add(zabs_, o.val_));
    if (o.zero_) return fuzzy_zero(ctx_, sat_add(o.zabs_, val_));
    PadicNum r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.val_ = val_ + o.val_;
    r.prec_ = std::min(prec_, o.prec_);
    Int m = ctx_->pow_p(r.prec_);
    if (ctx_->f == 1) {
        r.u_.assign(1, mod_reduce(u_[0] * o.u_[0], m));
    } else {
        r.u_ = poly_mulmod(u_, o.u_, ctx_->modulus, m);
    }
    r.normalize();
    return r;
}

PadicNum PadicNum::inv() const {
    if (zero_) throw padic_error("division by exact zero");
    PadicNum r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.val_ = -val_;
    r.prec_ = prec_;
    Int m = ctx_->pow_p(prec_);
    if (ctx_->f == 1) {
        r.u_.assign(1, mod_inverse(u_[0], m));
    } else {
        // invert mod p by Fermat in F_{p^f}, then Newton lift
        Int P = ctx_->p;
        PolyV x = u_;
        for (auto& c : x) c = mod_reduce(c, P);
        PolyV y = poly_powmod(x, ipow(P, unsigned(ctx_->f)) - 2, ctx_->modulus, P);
        Int mk = P;
        while (mk < m) {
            mk = mk * mk;
            if (mk > m) mk = m;
            PolyV xy = poly_mulmod(u_, y, ctx_->modulus, mk);
            PolyV t(size_t(ctx_->f), 0);
            for (int j = 0; j < ctx_->f; ++j) t[size_t(j)] = mod_reduce(-xy[size_t(j)], mk);
            t[0] = mod_reduce(t[0] + 2, mk);
            y = poly_mulmod(y, t, ctx_->modulus, mk);
        }
        r.u_ = y;
    }
    return r;
}

PadicNum PadicNum::operator/(const PadicNum& o) const {
    if (o.zero_) throw padic_error("division by zero");
    if (zero_) return fuzzy_zero(ctx_, sat_add(zabs_, -o.val_));
    return *this * o.inv();
}

PadicNum PadicNum::pow(const Int& e) const {
    if (e < 0) return inv().pow(-e);
    if (zero_) {
        if (e == 0) throw padic_error("0^0");
        if (zabs_ == LONG_MAX || e > 64) return zero(ctx_);
        return fuzzy_zero(ctx_, zabs_ * long(e));
    }
    PadicNum r = from_int(ctx_, 1, prec_);
    PadicNum b = *this;
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

PadicNum PadicNum::shift(long k) const {
    PadicNum r = *this;
    if (zero_)
        r.zabs_ = sat_add(zabs_, k);
    else
        r.val_ += k;
    return r;
}

PadicNum PadicNum::truncate(int k) const {
    if (zero_ || prec_ <= k) return *this;
    PadicNum r = *this;
    r.prec_ = k;
    r.normalize();
    return r;
}

PadicNum PadicNum::frobenius() const {
    if (ctx_->f == 1 || zero_) return *this;
    // evaluate the coordinate polynomial at frob_w
    PadicNum r = zero(ctx_);
    Int m = ctx_->pow_p(prec_);
    PolyV acc(size_t(ctx_->f), 0);
    PolyV wp(size_t(ctx_->f), 0);
    wp[0] = 1;
    for (int i = 0; i < ctx_->f; ++i) {
        for (int j = 0; j < ctx_->f; ++j)
            acc[size_t(j)] = mod_reduce(acc[size_t(j)] + u_[size_t(i)] * wp[size_t(j)], m);
        wp = poly_mulmod(wp, ctx_->frob_w, ctx_->modulus, m);
    }
    r.zero_ = false;
    r.val_ = val_;
    r.prec_ = prec_;
    r.u_ = acc;
    r.normalize();
    return r;
}

PadicNum PadicNum::frobenius_inv() const {
    PadicNum r = *this;
    for (int i = 1; i < ctx_->f; ++i) r = r.frobenius();
    return r;
}

bool PadicNum::congruent(const PadicNum& o, int k) const {
    PadicNum d = *this - o;
    if (d.is_zero()) return d.zabs_ >= k;
    return d.val_ >= k;
}

PadicNum teichmuller(const CtxPtr& ctx, const Int& c) {
    std::vector<Int> v(size_t(ctx->f), 0);
    v[0] = c;
    return teichmuller(ctx, v);
}

PadicNum teichmuller(const CtxPtr& ctx, const std::vector<Int>& c) {
    PadicNum x = PadicNum::from_vector(ctx, c, ctx->N);
    if (x.is_zero() || x.valuation() != 0)
        throw padic_error("teichmuller requires a unit residue");
    Int q = ipow(Int(ctx->p), unsigned(ctx->f));
    for (int it = 0; it < ctx->N + 2; ++it) {
        PadicNum nx = x.pow(q);
        if (nx.congruent(x, ctx->N)) return nx;
        x = nx;
    }
    return x;
}

PadicNum plog(const PadicNum& u) {
    const CtxPtr& ctx = u.ctx();
    int wp = std::min(u.prec() + 8, ctx->cap);
    PadicNum one = PadicNum::from_int(ctx, 1, wp);
    PadicNum t = u - one;
    if (!t.is_zero() && t.valuation() < 1)
        throw padic_error("plog requires u == 1 mod p");
    if (t.is_zero()) return PadicNum::zero(ctx);
    int prec = u.prec();
    int kmax = prec + 2;
    {
        int lg = 0, n = prec;
        while (n > 0) {
            n /= int(ctx->p);
            ++lg;
        }
        kmax = prec + lg + 1;
    }
    PadicNum sum = PadicNum::zero(ctx);
    PadicNum tk = one;
    for (int k = 1; k <= kmax; ++k) {
        tk = tk * t;
        PadicNum term = tk / PadicNum::from_int(ctx, k, wp);
        if (k % 2 == 0) term = -term;
        sum = sum + term;
    }
    return sum;
}

PadicNum pexp(const PadicNum& x) {
    const CtxPtr& ctx = x.ctx();
    int wp = std::min(x.prec() + 8, ctx->cap);
    PadicNum one = PadicNum::from_int(ctx, 1, wp);
    if (x.is_zero()) return one;
    if (x.valuation() < 1) throw padic_error("pexp requires valuation >= 1");
    int prec = x.prec();
    int kmax = 2 * (prec + 2);
    PadicNum sum = one;
    PadicNum term = one;
    for (int k = 1; k <= kmax; ++k) {
        term = term * x / PadicNum::from_int(ctx, k, wp);
        sum = sum + term;
    }
    return sum;
}

PadicNum delta_p(const PadicNum& x) {
    if (x.is_zero()) return x;
    PadicNum num = x.frobenius() - x.pow(x.ctx()->p);
    return num.shift(-1);
}

int Weight::ord() const {
    for (int i = int(coeffs.size()); i-- > 0;)
        if (coeffs[size_t(i)] != 0) return i;
    return 0;
}

long Weight::deg() const {
    long d = 0;
    for (long a : coeffs) d += a;
    return d;
}

Weight Weight::operator+(const Weight& o) const {
    Weight r;
    r.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()), 0);
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

PadicNum weight_apply(const PadicNum& lambda, const Weight& w) {
    const CtxPtr& ctx = lambda.ctx();
    PadicNum r = PadicNum::from_int(ctx, 1, lambda.prec());
    PadicNum phil = lambda;
    for (size_t i = 0; i < w.coeffs.size(); ++i) {
        if (w.coeffs[i] != 0) r = r * phil.pow(w.coeffs[i]);
        phil = phil.frobenius();
    }
    return r;
}

}  // namespace qheat
