#pragma once

#include "qheat/padic.hpp"

#include <vector>

namespace qheat {

/// Truncated Laurent series over exact rationals.  Coefficients are stored
/// for exponents lowest..M; exponents above M are unknown, never assumed
/// zero.  This is the ground-truth backend: no precision drift.
class RatSeries {
public:
    RatSeries() = default;
    RatSeries(int lowest, int M) : lowest_(lowest), M_(M) {
        if (M < lowest) throw padic_error("empty truncation window");
        c_.assign(size_t(M - lowest + 1), Rat(0));
    }

    static RatSeries constant(const Rat& v, int M);
    static RatSeries monomial(const Rat& v, int e, int M);

    int lowest() const { return lowest_; }
    int order() const { return M_; }

    const Rat& coeff(int e) const;
    void set_coeff(int e, const Rat& v);

    bool is_zero() const;
    // lowest exponent with nonzero coefficient; throws if zero to truncation
    int low_exponent() const;
    bool is_unit() const;  // lowest = 0 with nonzero constant term

    RatSeries operator-() const;
    RatSeries operator+(const RatSeries& o) const;
    RatSeries operator-(const RatSeries& o) const;
    RatSeries operator*(const RatSeries& o) const;
    RatSeries operator/(const RatSeries& o) const;
    RatSeries pow(long e) const;
    RatSeries inverse() const;

    RatSeries scale(const Rat& v) const;
    RatSeries truncate(int M) const;   // shrink window
    RatSeries shift_exp(int k) const;  // multiply by q^k

    RatSeries dq() const;       // q d/dq
    RatSeries deriv() const;    // d/dq
    RatSeries integrate() const;  // c_n -> c_n/n, constant term must vanish
    RatSeries subst_power(int l) const;  // q -> q^l

    RatSeries exp() const;  // constant term zero
    RatSeries log() const;  // constant term one

    RatSeries compose(const RatSeries& g) const;  // g.low_exponent() >= 1
    RatSeries reverse() const;  // compositional inverse, c1 != 0

private:
    int lowest_ = 0;
    int M_ = 0;
    std::vector<Rat> c_{Rat(0)};
};

// p-adic valuation of a nonzero rational.
long rat_valuation(const Rat& v, unsigned p);

}  // namespace qheat
