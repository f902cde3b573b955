#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <climits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qheat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class padic_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ambient ring W(F_{p^f}) truncated at p^N.  f = 1 is plain Z_p; for
/// f > 1 the ring is Z_p[w]/(m(w)) with m a monic lift of an irreducible
/// polynomial over F_p, and the Frobenius lift is stored as the image of w
/// (the Hensel-lifted conjugate root).
struct PadicContext {
    unsigned p;
    int N;      // target precision digits
    int f;      // extension degree, 1 = base field
    int cap;    // max precision supported for f > 1 structures

    // f > 1 only: modulus coefficients c_0..c_{f-1} of m(w) = w^f + ... + c_0,
    // and the Frobenius image of w, both mod p^cap.
    std::vector<Int> modulus;
    std::vector<Int> frob_w;

    Int pow_p(int k) const;
};

using CtxPtr = std::shared_ptr<const PadicContext>;

// Builds a context.  For f > 1 an irreducible degree-f polynomial mod p is
// found by search and the Frobenius root is Hensel-lifted to precision
// N + extra.
CtxPtr make_context(unsigned p, int N, int f = 1, int extra = 40);

/// A residue of W(F_{p^f}) at tracked precision: p^val * unit, with the unit
/// part known mod p^prec.  Absolute precision is val + prec.  Exact zero is
/// flagged separately (valuation +infinity).
class PadicNum {
public:
    PadicNum() = default;

    static PadicNum zero(const CtxPtr& ctx);
    static PadicNum from_int(const CtxPtr& ctx, const Int& v, int prec = -1);
    static PadicNum from_rational(const CtxPtr& ctx, const Rat& v, int prec = -1);
    // f > 1: coefficient vector in the power basis of w.
    static PadicNum from_vector(const CtxPtr& ctx, std::vector<Int> v, int prec = -1);

    bool is_zero() const { return zero_; }
    bool is_unit() const { return !zero_ && val_ == 0; }
    long valuation() const;          // throws on exact zero
    int prec() const { return prec_; }
    // absolute precision: the value is known modulo p^abs_prec(); zeros
    // arising from cancellation carry the bound at which they vanished
    long abs_prec() const { return zero_ ? zabs_ : val_ + prec_; }
    const CtxPtr& ctx() const { return ctx_; }

    // Canonical residue in [0, p^k) per coordinate, at absolute precision k
    // (k <= val + prec required; coordinates of p^val * unit).
    std::vector<Int> residue(int k) const;
    Int residue_scalar(int k) const; // f = 1 convenience
    std::string str() const;         // decimal canonical residue at full precision

    PadicNum operator-() const;
    PadicNum operator+(const PadicNum& o) const;
    PadicNum operator-(const PadicNum& o) const;
    PadicNum operator*(const PadicNum& o) const;
    PadicNum operator/(const PadicNum& o) const;
    PadicNum inv() const;
    PadicNum pow(const Int& e) const;

    // Multiplies by p^k (k may be negative); pure valuation shift.
    PadicNum shift(long k) const;
    // Drops unit precision to at most k digits.
    PadicNum truncate(int k) const;

    PadicNum frobenius() const;      // identity for f = 1
    PadicNum frobenius_inv() const;  // phi^(f-1)

    // True if the value is congruent to o modulo p^k (within known precision).
    bool congruent(const PadicNum& o, int k) const;

private:
    CtxPtr ctx_;
    bool zero_ = true;
    long val_ = 0;
    int prec_ = 0;
    long zabs_ = LONG_MAX;  // zero only: value is 0 + O(p^zabs_); LONG_MAX = exact
    std::vector<Int> u_;    // unit coordinates mod p^prec

    void normalize();
    friend PadicNum teichmuller(const CtxPtr&, const std::vector<Int>&);
};

/// Teichmuller lift: the root of unity congruent to c mod p, computed by
/// iterating x -> x^(p^f) to its fixpoint.
PadicNum teichmuller(const CtxPtr& ctx, const Int& c);
PadicNum teichmuller(const CtxPtr& ctx, const std::vector<Int>& c);

/// p-adic logarithm on 1 + pR and exponential on pR (p >= 5).
PadicNum plog(const PadicNum& u);
PadicNum pexp(const PadicNum& x);

/// delta_p on constants: (phi(x) - x^p)/p.
PadicNum delta_p(const PadicNum& x);

/// Weight w = sum a_i phi^i in Z[phi]; lambda^w = prod phi^i(lambda)^(a_i).
struct Weight {
    std::vector<long> coeffs;  // a_0, a_1, ...

    int ord() const;
    long deg() const;
    Weight operator+(const Weight& o) const;
};

PadicNum weight_apply(const PadicNum& lambda, const Weight& w);

}  // namespace qheat
