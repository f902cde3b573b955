#pragma once

#include "qheat/qseries.hpp"
#include "qheat/rat_series.hpp"

namespace qheat {

/// s_m(q) = sum_{n>=1} sigma_m(n) q^n for odd m; integer coefficients.
RatSeries sigma_series(unsigned m, int M);

/// E2 = 1 - 24 s1, E4 = 1 + 240 s3, E6 = 1 - 504 s5.
RatSeries eisenstein(unsigned k, int M);

/// Discriminant expansion (E4^3 - E6^2)/1728 = q prod (1-q^n)^24.
RatSeries delta_series(int M);

/// Product form q prod_{n>=1} (1 - q^n)^24, independent route.
RatSeries eta24_series(int M);

/// j = E4^3 / Delta = 1/q + 744 + 196884 q + ...
RatSeries j_series(int M);

/// Tate coefficients a4 = -E4/48, a6 = -E6/864 (rational).
RatSeries tate_a4(int M);
RatSeries tate_a6(int M);

/// A point (a, b) of the modular scheme over R((q))^ or R[[q]].
struct ModularPoint {
    QSeries a;
    QSeries b;
};

/// Delta(a, b) = -2^6 a^3 - 2^4 3^3 b^2.
QSeries disc(const ModularPoint& pt);
RatSeries disc(const RatSeries& a, const RatSeries& b);

enum class PointType { bad, good, other };

/// bad: a, b units, 4a^3+27b^2 in qR[[q]]^x; good: a, b power-series units
/// with 4a^3+27b^2 a unit.
PointType classify(const ModularPoint& pt);

ModularPoint tate_point(const CtxPtr& ctx, int M);

/// j = -2^12 27 a^3 / Delta(a,b); on the Tate point 1/q + 744 + ...
QSeries j_invariant(const ModularPoint& pt);

/// Hasse-invariant ordinarity test; closed form for p=5 (E4 = -48a) and
/// p=7 (E6 = -864b) only.
bool is_ordinary(const ModularPoint& pt);

/// Hurlburt form (2a dq(b) - 3b dq(a))/Delta(a,b), gamma_1 = 1.
QSeries hurlburt_f1q(const ModularPoint& pt);

}  // namespace qheat
