#pragma once

#include <cmath>
#include <vector>

#include "gamow/barrier.hpp"
#include "gamow/types.hpp"

namespace gamow {

// Evaluation point for the outgoing-wave Green function; both space
// arguments live on the barrier interval.
struct GreenQuery {
  double x = 0.0;
  double y = 0.0;
  cplx p;
};

// Exact Green function of u'' + (p^2 - 2mV 1_{[0,L]}) u = delta(x - y),
// outgoing at both ends, unit derivative jump at x = y. Branches:
// dedicated hyperbolic form at p = 0, a trigonometric form built on the
// entire D/p' for |p'|L < 0.3 (covers p' = 0), the exponential form
// elsewhere. Throws PoleProximityError too close to a zero of D and
// std::invalid_argument for (x, y) outside the interval.
cplx green_closed(const BarrierParams& b, const GreenQuery& q);

inline cplx green_closed(const BarrierParams& b, double x, double y, cplx p) {
  return green_closed(b, GreenQuery{x, y, p});
}

// Mittag-Leffler expansion over pairs_n pole pairs of
// u(x)u(y)/N / (p - p_n). Returns the mean of the last two pair partial
// sums; the raw partial sum carries an oscillating tail and the average
// is what converges. Refuses (0,0) and (L,L), where the expansion fails
// to converge and the subtracted form is required.
cplx green_pole_series(const BarrierParams& b, const GreenQuery& q,
                       const PolePairs& pairs, int pairs_n);

// Twice-subtracted expansion p^2 sum (1/N)(1/p_n^2) u(x)u(y)/(p - p_n)
// + G(x,y,0) + p dG/dp(x,y,0); the constants come from the closed forms
// (hyperbolic value, closed derivative at the exceptional corners, a
// Cauchy-circle derivative elsewhere). Requires p != 0.
cplx green_subtracted_series(const BarrierParams& b, const GreenQuery& q,
                             const PolePairs& pairs, int pairs_n);

// Scattering eigenfunction recovered from edge values of the Green
// function: phi_in_r(x) = 2ip sqrt(m/(2 pi p)) G(0,x,p), and the
// left-moving variant from G(L,x,p). Only in_r / in_l are extractable
// this way. Requires p > 0.
cplx scattering_from_green(const BarrierParams& b, double x, double p,
                           ScatteringKind kind);

// int_0^L G(x,y,Q) e^{i kk y} dy in closed form (plane-wave overlap of
// one Green-function row). Near p'(Q) = 0 the closed form degrades, so
// the value is recovered as the mean over a radius-0.3 circle in Q.
cplx green_planewave_integral(const BarrierParams& b, double x, cplx Q,
                              double kk);

// Derivatives f^(j)(q), j = 0..maxorder, by trapezoid quadrature of the
// Cauchy integral on a radius-r circle (spectrally accurate for f
// analytic on a neighborhood of the disc).
template <class F>
std::vector<cplx> cauchy_derivs(F&& f, cplx q, int maxorder, double r = 0.45,
                                int m = 32) {
  std::vector<cplx> sums(maxorder + 1, cplx(0.0));
  for (int n = 0; n < m; ++n) {
    const double th = 2.0 * PI * n / m;
    const cplx e(std::cos(th), std::sin(th));
    const cplx fv = f(q + r * e);
    cplx rot = 1.0;
    for (int j = 0; j <= maxorder; ++j) {
      sums[j] += fv * rot;
      rot /= e;
    }
  }
  std::vector<cplx> out(maxorder + 1);
  double fact = 1.0;
  double rj = 1.0;
  for (int j = 0; j <= maxorder; ++j) {
    if (j > 0) {
      fact *= j;
      rj *= r;
    }
    out[j] = sums[j] / double(m) * fact / rj;
  }
  return out;
}

namespace detail {
// Analytic d/dx of green_closed; exponential branch only (throws
// std::domain_error within the |p'|L < 0.3 seam) and undefined on the
// diagonal x = y.
cplx green_dx(const BarrierParams& b, const GreenQuery& q);
}  // namespace detail

}  // namespace gamow
