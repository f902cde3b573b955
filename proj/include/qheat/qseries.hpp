#pragma once

#include "qheat/padic.hpp"
#include "qheat/rat_series.hpp"

#include <vector>

namespace qheat {

/// Truncated Laurent series in q over PadicNum coefficients.  Exponents
/// lowest..M are stored; above M nothing is assumed.  Coefficients below
/// lowest are exactly zero.
class QSeries {
public:
    QSeries() = default;
    QSeries(CtxPtr ctx, int lowest, int M);

    static QSeries constant(const PadicNum& v, int M);
    static QSeries monomial(const PadicNum& v, int e, int M);
    static QSeries from_rational(const CtxPtr& ctx, const RatSeries& s, int prec = -1);

    const CtxPtr& ctx() const { return ctx_; }
    int lowest() const { return lowest_; }
    int order() const { return M_; }

    const PadicNum& coeff(int e) const;
    void set_coeff(int e, const PadicNum& v);

    bool is_zero() const;  // zero to truncation at known precision
    int low_exponent() const;
    bool is_unit() const;         // lowest nonzero exponent 0, unit constant
    bool is_laurent_unit() const; // q^e * unit

    // minimum absolute coefficient precision over nonzero coefficients
    int eff_prec() const;
    // minimum coefficient valuation over nonzero coefficients (LONG_MAX if 0)
    long min_valuation() const;

    QSeries operator-() const;
    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator/(const QSeries& o) const;
    QSeries pow(const Int& e) const;
    QSeries inverse() const;

    QSeries scale(const PadicNum& v) const;
    QSeries truncate(int M) const;
    QSeries shift_exp(int k) const;

    QSeries dq() const;
    QSeries deriv() const;
    QSeries integrate() const;

    /// F -> F^(phi)(q^p): exponents times p, coefficients Frobenius-twisted.
    QSeries phi_star() const;
    /// delta_p F = (phi_star(F) - F^p)/p
    QSeries dp() const;
    /// phi_p F = F^p + p delta_p F (= phi_star in the canonical structure)
    QSeries phi_p() const;
    /// q -> q^l for a prime l != p
    QSeries phi_l(unsigned l) const;

    QSeries exp() const;  // argument in qK[[q]] (constant with valuation >= 1 allowed)
    QSeries log() const;  // unit series, constant term == 1 mod p

    QSeries compose(const QSeries& g) const;
    QSeries reverse() const;

    bool congruent(const QSeries& o, int k) const;

private:
    CtxPtr ctx_;
    int lowest_ = 0;
    int M_ = 0;
    std::vector<PadicNum> c_;
};

}  // namespace qheat
