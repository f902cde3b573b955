#include "qheat/symforms.hpp"
#include "qheat/modforms.hpp"

#include <random>
#include <sstream>

namespace qheat {

namespace {

void trim_mono(SymPoly::Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

SymPoly SymPoly::constant(const Rat& c) {
    SymPoly r;
    if (c != 0) r.terms_[{}] = c;
    return r;
}

SymPoly SymPoly::variable(unsigned id) {
    SymPoly r;
    Mono m(id + 1, 0);
    m[id] = 1;
    r.terms_[m] = 1;
    return r;
}

bool SymPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat SymPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw padic_error("not a constant polynomial");
    return terms_.begin()->second;
}

int SymPoly::order() const {
    int r = 0;
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) r = std::max(r, int(i / 2));
    return r;
}

void SymPoly::add_term(Mono m, const Rat& c) {
    trim_mono(m);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_[std::move(m)] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly SymPoly::operator-() const {
    SymPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(std::move(m), ca * cb);
        }
    }
    return r;
}

SymPoly SymPoly::scale(const Rat& c) const {
    SymPoly r;
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

SymPoly SymPoly::partial(unsigned id) const {
    SymPoly r;
    for (const auto& [m, c] : terms_) {
        if (id >= m.size() || m[id] == 0) continue;
        Mono d = m;
        Rat e = d[id];
        d[id] -= 1;
        r.add_term(std::move(d), c * e);
    }
    return r;
}

SymPoly SymPoly::total_dq() const {
    SymPoly r;
    for (const auto& [m, c] : terms_) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            // a4^(j) or a6^(j) at var i; bump to jet j+1 (var i+2)
            Mono d = m;
            Rat e = d[i];
            d[i] -= 1;
            if (d.size() < i + 3) d.resize(i + 3, 0);
            d[i + 2] += 1;
            r.add_term(std::move(d), c * e);
        }
    }
    return r;
}

bool SymPoly::divide_exact(const SymPoly& d, SymPoly& quot) const {
    if (d.is_zero()) throw padic_error("division by zero polynomial");
    SymPoly rem = *this;
    SymPoly q;
    const auto& dl = *d.terms_.rbegin();  // leading term under lex
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms_.rbegin();
        // check divisibility of leading monomials
        Mono ratio(std::max(rl.first.size(), dl.first.size()), 0);
        bool ok = rl.first.size() >= dl.first.size();
        if (ok) {
            for (size_t i = 0; i < ratio.size(); ++i) {
                uint32_t re = i < rl.first.size() ? rl.first[i] : 0;
                uint32_t de = i < dl.first.size() ? dl.first[i] : 0;
                if (re < de) {
                    ok = false;
                    break;
                }
                ratio[i] = re - de;
            }
        }
        if (!ok) return false;
        SymPoly t;
        t.add_term(std::move(ratio), rl.second / dl.second);
        q = q + t;
        rem = rem - t * d;
    }
    quot = q;
    return true;
}

RatSeries SymPoly::eval(const std::vector<RatSeries>& vars, int M) const {
    RatSeries acc(0, M);
    for (const auto& [m, c] : terms_) {
        RatSeries t = RatSeries::constant(c, M);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= vars.size()) throw padic_error("eval: missing variable value");
            t = t * vars[i].pow(m[i]);
        }
        acc = acc + t;
    }
    return acc;
}

std::string SymPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest monomials first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_var = !m.empty();
        bool coef_one = (a == 1);
        if (!coef_one || !has_var) {
            Int n = numerator(a), d = denominator(a);
            os << n.str();
            if (d != 1) os << "/" << d.str();
            if (has_var) os << "*";
        }
        bool fv = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!fv) os << "*";
            fv = false;
            os << (i % 2 == 0 ? "a4_" : "a6_") << (i / 2);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

SymPoly SymPoly::parse(const std::string& text) {
    SymPoly out;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && isspace(uint8_t(text[i]))) ++i;
    };
    skip_ws();
    if (i < text.size() && text.compare(i, 1, "0") == 0 && i + 1 == text.size()) return out;
    bool neg = false;
    while (i < text.size()) {
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = (text[i] == '-');
            ++i;
            skip_ws();
        }
        // one term: factors separated by '*'
        Rat coef = 1;
        Mono m;
        bool any = false;
        while (i < text.size()) {
            skip_ws();
            if (i < text.size() && (text[i] == '+' || text[i] == '-')) break;
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            if (i >= text.size()) break;
            if (isdigit(uint8_t(text[i]))) {
                size_t j = i;
                while (j < text.size() && isdigit(uint8_t(text[j]))) ++j;
                Int num(text.substr(i, j - i));
                i = j;
                Int den = 1;
                if (i < text.size() && text[i] == '/' && i + 1 < text.size() &&
                    isdigit(uint8_t(text[i + 1]))) {
                    size_t k = i + 1;
                    while (k < text.size() && isdigit(uint8_t(text[k]))) ++k;
                    den = Int(text.substr(i + 1, k - i - 1));
                    i = k;
                }
                coef *= Rat(num, den);
                any = true;
            } else if (text[i] == 'a') {
                if (i + 1 >= text.size() || (text[i + 1] != '4' && text[i + 1] != '6'))
                    throw padic_error("parse: expected a4_ or a6_");
                bool is4 = text[i + 1] == '4';
                i += 2;
                if (i >= text.size() || text[i] != '_') throw padic_error("parse: expected _");
                ++i;
                size_t j = i;
                while (j < text.size() && isdigit(uint8_t(text[j]))) ++j;
                unsigned jet = unsigned(std::stoul(text.substr(i, j - i)));
                i = j;
                unsigned exp = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    j = i;
                    while (j < text.size() && isdigit(uint8_t(text[j]))) ++j;
                    exp = unsigned(std::stoul(text.substr(i, j - i)));
                    i = j;
                }
                unsigned id = 2 * jet + (is4 ? 0 : 1);
                if (m.size() < id + 1) m.resize(id + 1, 0);
                m[id] += exp;
                any = true;
            } else {
                throw padic_error("parse: unexpected character in polynomial");
            }
        }
        if (!any) break;
        out.add_term(std::move(m), neg ? -coef : coef);
        neg = false;
    }
    return out;
}

SymPoly sym_delta() {
    SymPoly a4 = SymPoly::a4(), a6 = SymPoly::a6();
    return (a4 * a4 * a4).scale(-64) + (a6 * a6).scale(-432);
}

SymFraction SymFraction::operator-() const { return {-num, denom_pow}; }

SymFraction SymFraction::operator+(const SymFraction& o) const {
    unsigned k = std::max(denom_pow, o.denom_pow);
    SymPoly d = sym_delta();
    SymPoly a = num, b = o.num;
    for (unsigned i = denom_pow; i < k; ++i) a = a * d;
    for (unsigned i = o.denom_pow; i < k; ++i) b = b * d;
    return SymFraction{a + b, k}.normalized();
}

SymFraction SymFraction::operator-(const SymFraction& o) const { return *this + (-o); }

SymFraction SymFraction::operator*(const SymFraction& o) const {
    return SymFraction{num * o.num, denom_pow + o.denom_pow}.normalized();
}

SymFraction SymFraction::scale(const Rat& c) const { return {num.scale(c), denom_pow}; }

SymFraction SymFraction::normalized() const {
    SymFraction r = *this;
    SymPoly d = sym_delta();
    while (r.denom_pow > 0) {
        SymPoly q;
        if (!r.num.divide_exact(d, q)) break;
        r.num = q;
        --r.denom_pow;
    }
    if (r.num.is_zero()) r.denom_pow = 0;
    return r;
}

bool SymFraction::equals_constant(const Rat& c) const {
    SymFraction n = normalized();
    if (n.denom_pow != 0) return false;
    return n.num.is_constant() && n.num.constant_value() == c;
}

std::string SymFraction::str() const {
    std::string s = num.str();
    if (denom_pow > 0) {
        s = "(" + s + ")/Delta^" + std::to_string(denom_pow);
    }
    return s;
}

SymFraction SymFraction::parse(const std::string& text) {
    auto pos = text.rfind("/Delta^");
    if (pos == std::string::npos) {
        return {SymPoly::parse(text), 0};
    }
    unsigned k = unsigned(std::stoul(text.substr(pos + 7)));
    std::string body = text.substr(0, pos);
    // strip one matching outer paren pair if present
    if (!body.empty() && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    return {SymPoly::parse(body), k};
}

SymFraction sym_f1q() {
    SymPoly n = (SymPoly::a4(0) * SymPoly::a6(1)).scale(2) -
                (SymPoly::a6(0) * SymPoly::a4(1)).scale(3);
    return {n, 1};
}

SymFraction sym_dq(const SymFraction& f) {
    // (N' Delta - k N Delta') / Delta^(k+1)
    SymPoly d = sym_delta();
    SymPoly n = f.num.total_dq() * d - (f.num * d.total_dq()).scale(Rat(f.denom_pow));
    return SymFraction{n, f.denom_pow + 1}.normalized();
}

namespace {

SymFraction jet_derivation(const SymFraction& f, unsigned r, const SymPoly& c4,
                           const SymPoly& c6) {
    // derivation L = c4 d/d a4^(r) + c6 d/d a6^(r), quotient rule on Delta^-k
    unsigned v4 = 2 * r, v6 = 2 * r + 1;
    SymPoly ln = c4 * f.num.partial(v4) + c6 * f.num.partial(v6);
    SymPoly d = sym_delta();
    SymPoly ld = c4 * d.partial(v4) + c6 * d.partial(v6);
    if (ld.is_zero()) return SymFraction{ln, f.denom_pow}.normalized();
    SymPoly n = ln * d - (f.num * ld).scale(Rat(f.denom_pow));
    return SymFraction{n, f.denom_pow + 1}.normalized();
}

}  // namespace

SymFraction serre_partial(const SymFraction& f, unsigned r) {
    SymPoly c4 = (SymPoly::a6(0)).scale(-72);
    SymPoly c6 = (SymPoly::a4(0) * SymPoly::a4(0)).scale(16);
    return jet_derivation(f, r, c4, c6);
}

SymFraction euler_D(const SymFraction& f, unsigned r) {
    SymPoly c4 = SymPoly::a4(0).scale(4);
    SymPoly c6 = SymPoly::a6(0).scale(6);
    return jet_derivation(f, r, c4, c6);
}

RatSeries fourier_eval_rat(const SymFraction& f, int M) {
    int r = f.order();
    int W = M + int(f.denom_pow) + 2;
    RatSeries a4 = tate_a4(W), a6 = tate_a6(W);
    std::vector<RatSeries> vars;
    RatSeries j4 = a4, j6 = a6;
    for (int i = 0; i <= r; ++i) {
        vars.push_back(j4);
        vars.push_back(j6);
        j4 = j4.dq();
        j6 = j6.dq();
    }
    RatSeries n = f.num.eval(vars, W);
    if (f.denom_pow == 0) return n.truncate(M);
    RatSeries d = disc(a4, a6);  // = Delta expansion, q - 24q^2 + ...
    return (n / d.pow(long(f.denom_pow))).truncate(M);
}

QSeries fourier_eval(const SymFraction& f, const CtxPtr& ctx, int M) {
    return QSeries::from_rational(ctx, fourier_eval_rat(f, M));
}

WeightCheckResult weight_check_random(const SymFraction& f, long m, int trials,
                                      uint64_t seed, int M) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-4, 4);
    auto rand_series = [&](bool unit) {
        RatSeries s(0, M);
        int c0 = 0;
        while (unit && c0 == 0) c0 = small(rng);
        s.set_coeff(0, unit ? c0 : small(rng));
        for (int e = 1; e <= M; ++e) s.set_coeff(e, small(rng));
        return s;
    };
    int r = f.order();
    for (int t = 0; t < trials; ++t) {
        RatSeries A4 = rand_series(true), A6 = rand_series(true), L = rand_series(true);
        if (disc(A4, A6).coeff(0) == 0) {
            --t;
            continue;
        }
        RatSeries T4 = L.pow(4) * A4, T6 = L.pow(6) * A6;
        auto jets = [&](const RatSeries& x4, const RatSeries& x6) {
            std::vector<RatSeries> v;
            RatSeries j4 = x4, j6 = x6;
            for (int i = 0; i <= r; ++i) {
                v.push_back(j4);
                v.push_back(j6);
                j4 = j4.dq();
                j6 = j6.dq();
            }
            return v;
        };
        auto eval_frac = [&](const std::vector<RatSeries>& v, const RatSeries& x4,
                             const RatSeries& x6) {
            RatSeries n = f.num.eval(v, M);
            if (f.denom_pow == 0) return n;
            return n / disc(x4, x6).pow(long(f.denom_pow));
        };
        RatSeries base = eval_frac(jets(A4, A6), A4, A6);
        RatSeries twisted = eval_frac(jets(T4, T6), T4, T6);
        RatSeries expect = base * L.pow(m);
        RatSeries diff = twisted - expect;
        if (!diff.is_zero()) {
            std::ostringstream os;
            os << "trial " << t << ": first mismatch at q^" << diff.low_exponent();
            return {false, os.str()};
        }
    }
    return {true, ""};
}

}  // namespace qheat
