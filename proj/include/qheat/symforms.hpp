#pragma once

#include "qheat/qseries.hpp"
#include "qheat/rat_series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qheat {

/// Sparse polynomial with rational coefficients in the jet variables
/// a4^(0..r), a6^(0..r).  Variable id 2i is a4^(i), 2i+1 is a6^(i);
/// a monomial is its exponent vector (trailing zeros trimmed).
class SymPoly {
public:
    using Mono = std::vector<uint32_t>;

    static SymPoly zero() { return {}; }
    static SymPoly constant(const Rat& c);
    static SymPoly variable(unsigned id);
    static SymPoly a4(unsigned jet = 0) { return variable(2 * jet); }
    static SymPoly a6(unsigned jet = 0) { return variable(2 * jet + 1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;
    int order() const;  // highest jet index appearing

    SymPoly operator-() const;
    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly scale(const Rat& c) const;

    SymPoly partial(unsigned id) const;
    /// Total q-derivative: a^(i) -> a^(i+1), extended by Leibniz.
    SymPoly total_dq() const;

    /// Exact division; returns false when not divisible.
    bool divide_exact(const SymPoly& d, SymPoly& quot) const;

    RatSeries eval(const std::vector<RatSeries>& vars, int M) const;

    std::string str() const;
    static SymPoly parse(const std::string& text);

    const std::map<Mono, Rat>& terms() const { return terms_; }
    void add_term(Mono m, const Rat& c);

private:
    std::map<Mono, Rat> terms_;
};

/// Delta = -2^6 a4^3 - 2^4 3^3 a6^2 as a jet polynomial.
SymPoly sym_delta();

/// Exact fraction P/Delta^k in the jet variables.
struct SymFraction {
    SymPoly num;
    unsigned denom_pow = 0;

    static SymFraction from_poly(SymPoly p) { return {std::move(p), 0}; }

    int order() const { return num.order(); }

    SymFraction operator-() const;
    SymFraction operator+(const SymFraction& o) const;
    SymFraction operator-(const SymFraction& o) const;
    SymFraction operator*(const SymFraction& o) const;
    SymFraction scale(const Rat& c) const;

    /// Cancels Delta factors common to numerator and denominator.
    SymFraction normalized() const;

    bool is_zero() const { return num.is_zero(); }
    // true if the fraction equals the given constant after normalization
    bool equals_constant(const Rat& c) const;

    std::string str() const;
    static SymFraction parse(const std::string& text);
};

/// Hurlburt form f^1_q = (2 a4 a6^(1) - 3 a6 a4^(1)) / Delta.
SymFraction sym_f1q();

/// Total derivative delta_q on fractions (quotient rule on Delta^-k).
SymFraction sym_dq(const SymFraction& f);

/// Serre operator: 16 a4^2 d/d a6^(r) - 72 a6 d/d a4^(r).
SymFraction serre_partial(const SymFraction& f, unsigned r);

/// Euler operator: 4 a4 d/d a4^(r) + 6 a6 d/d a6^(r).
SymFraction euler_D(const SymFraction& f, unsigned r);

/// Fourier evaluation along the canonical section a4^(i) -> dq^i a4_inf(q):
/// exact rational route, and the p-adic reduction.
RatSeries fourier_eval_rat(const SymFraction& f, int M);
QSeries fourier_eval(const SymFraction& f, const CtxPtr& ctx, int M);

struct WeightCheckResult {
    bool pass;
    std::string witness;  // description of the failing substitution, if any
};

/// Probabilistic weight test: substitutes jets of (L^4 a4, L^6 a6) for random
/// unit series L and base series, and compares against L^m times the value.
WeightCheckResult weight_check_random(const SymFraction& f, long m, int trials,
                                      uint64_t seed, int M = 16);

}  // namespace qheat
