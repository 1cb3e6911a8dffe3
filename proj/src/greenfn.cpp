#include "gamow/greenfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gamow/cxmath.hpp"

namespace gamow {

namespace {

const cplx I1(0.0, 1.0);

void check_interval(const BarrierParams& b, double x, double y) {
  if (!(x >= 0.0 && x <= b.L && y >= 0.0 && y <= b.L)) {
    std::ostringstream msg;
    msg << "green: point (" << x << "," << y << ") outside [0," << b.L << "]^2";
    throw std::invalid_argument(msg.str());
  }
}

// proximity to a zero of D measured as cancellation between the two
// exponential terms; deep second-sheet points keep a ratio near 1 even
// though one term dwarfs the other
void check_proximity(const MomentumFrame& f, cplx t1, cplx t2) {
  if (std::abs(t1 - t2) < 1e-12 * (std::abs(t1) + std::abs(t2))) {
    std::ostringstream msg;
    msg << "green: p = (" << f.p.real() << "," << f.p.imag()
        << ") is within the pole-proximity cutoff; use residue machinery";
    throw PoleProximityError(msg.str());
  }
}

cplx green_zero_momentum(const BarrierParams& b, double x, double y) {
  const double kap = b.kappa();
  const double mx = std::max(x, y), mn = std::min(x, y);
  return -std::cosh(kap * (b.L - mx)) * std::cosh(kap * mn) /
         (kap * std::sinh(kap * b.L));
}

cplx dgreen_dp_zero_corner(const BarrierParams& b) {
  const double kap = b.kappa();
  const double sh = std::sinh(kap * b.L);
  return -(I1 / (4.0 * b.m * b.V)) * (3.0 + std::cosh(2.0 * kap * b.L)) /
         (sh * sh);
}

}  // namespace

cplx green_closed(const BarrierParams& b, const GreenQuery& q) {
  check_interval(b, q.x, q.y);
  if (q.p == cplx(0.0)) return green_zero_momentum(b, q.x, q.y);

  const MomentumFrame f(b, q.p);
  const double mx = std::max(q.x, q.y), mn = std::min(q.x, q.y);
  const double d = mx - mn;

  if (std::abs(f.pp) * b.L < 0.3) {
    // p' ~ 0: no zero of D nearby, the entire D/p' gauge carries through
    const cplx c = f.pp * (b.L - q.x - q.y);
    const cplx e = f.pp * (b.L - d);
    const cplx brhat = 4.0 * q.p * q.p * sinc_scaled(f.pp, b.L - mx) *
                           sinc_scaled(f.pp, mn) -
                       2.0 * (std::cos(c) + std::cos(e)) +
                       4.0 * I1 * q.p * sinc_scaled(f.pp, b.L - d);
    return -I1 * brhat / (2.0 * denominator_D_entire(b, q.p));
  }

  const cplx t1 = f.om * f.om * std::exp(2.0 * I1 * f.pp * b.L);
  const cplx t2 = f.pl * f.pl;
  check_proximity(f, t1, t2);
  const cplx D2 = t1 - t2;
  const cplx br2 =
      b.twomV() * (std::exp(I1 * f.pp * (2.0 * b.L - q.x - q.y)) +
                   std::exp(I1 * f.pp * (q.x + q.y))) -
      f.pl * f.pl * std::exp(I1 * f.pp * d) -
      f.om * f.om * std::exp(I1 * f.pp * (2.0 * b.L - d));
  return -I1 * br2 / (2.0 * f.pp * D2);
}

namespace detail {

cplx green_dx(const BarrierParams& b, const GreenQuery& q) {
  check_interval(b, q.x, q.y);
  if (q.x == q.y)
    throw std::invalid_argument("green_dx: derivative jumps across x = y");
  const MomentumFrame f(b, q.p);
  if (std::abs(f.pp) * b.L < 0.3)
    throw std::domain_error("green_dx: not provided near the p' = 0 seam");
  const double sgn = q.x > q.y ? 1.0 : -1.0;
  const double d = std::abs(q.x - q.y);
  const cplx t1 = f.om * f.om * std::exp(2.0 * I1 * f.pp * b.L);
  const cplx t2 = f.pl * f.pl;
  check_proximity(f, t1, t2);
  const cplx D2 = t1 - t2;
  const cplx dbr2 =
      I1 * f.pp *
      (b.twomV() * (-std::exp(I1 * f.pp * (2.0 * b.L - q.x - q.y)) +
                    std::exp(I1 * f.pp * (q.x + q.y))) -
       sgn * f.pl * f.pl * std::exp(I1 * f.pp * d) +
       sgn * f.om * f.om * std::exp(I1 * f.pp * (2.0 * b.L - d)));
  return -I1 * dbr2 / (2.0 * f.pp * D2);
}

}  // namespace detail

cplx green_pole_series(const BarrierParams& b, const GreenQuery& q,
                       const PolePairs& pairs, int pairs_n) {
  check_interval(b, q.x, q.y);
  const bool c00 = q.x == 0.0 && q.y == 0.0;
  const bool cLL = q.x == b.L && q.y == b.L;
  if (c00 || cLL)
    throw std::domain_error(
        "green_pole_series: expansion grows like |p| at the endpoint "
        "corners; use green_subtracted_series");
  if (pairs_n < 1 || size_t(pairs_n) > pairs.pairs())
    throw std::invalid_argument("green_pole_series: bad pair count");

  // mean of the last two pair partial sums: the raw tail oscillates with
  // pair index and the two-point average is what converges at the
  // documented rates
  cplx acc = 0.0, prev = 0.0;
  for (int i = 0; i < pairs_n; ++i) {
    prev = acc;
    acc += pairs.pos.u(i, q.x) * pairs.pos.u(i, q.y) / pairs.pos.N[i] /
           (q.p - pairs.pos.p[i]);
    acc += pairs.neg.u(i, q.x) * pairs.neg.u(i, q.y) / pairs.neg.N[i] /
           (q.p - pairs.neg.p[i]);
  }
  return pairs_n == 1 ? acc : 0.5 * (acc + prev);
}

cplx green_subtracted_series(const BarrierParams& b, const GreenQuery& q,
                             const PolePairs& pairs, int pairs_n) {
  check_interval(b, q.x, q.y);
  if (q.p == cplx(0.0))
    throw std::invalid_argument("green_subtracted_series: p = 0 is the "
                                "expansion point itself");
  if (pairs_n < 1 || size_t(pairs_n) > pairs.pairs())
    throw std::invalid_argument("green_subtracted_series: bad pair count");

  cplx acc = 0.0, prev = 0.0;
  for (int i = 0; i < pairs_n; ++i) {
    prev = acc;
    const cplx pp_ = pairs.pos.p[i];
    const cplx pn_ = pairs.neg.p[i];
    acc += pairs.pos.u(i, q.x) * pairs.pos.u(i, q.y) / pairs.pos.N[i] /
           (pp_ * pp_) / (q.p - pp_);
    acc += pairs.neg.u(i, q.x) * pairs.neg.u(i, q.y) / pairs.neg.N[i] /
           (pn_ * pn_) / (q.p - pn_);
  }
  if (pairs_n > 1) acc = 0.5 * (acc + prev);

  const bool corner = (q.x == 0.0 && q.y == 0.0) || (q.x == b.L && q.y == b.L);
  const cplx g0 = green_zero_momentum(b, q.x, q.y);
  const cplx dg0 =
      corner ? dgreen_dp_zero_corner(b)
             : cauchy_derivs([&](cplx p) { return green_closed(b, q.x, q.y, p); },
                             cplx(0.0), 1)[1];
  return q.p * q.p * acc + g0 + q.p * dg0;
}

cplx scattering_from_green(const BarrierParams& b, double x, double p,
                           ScatteringKind kind) {
  if (p <= 0.0)
    throw std::domain_error("scattering_from_green: requires p > 0");
  const double pref_arg = b.m / (2.0 * PI * p);
  const cplx pref = 2.0 * I1 * p * std::sqrt(pref_arg);
  switch (kind) {
    case ScatteringKind::in_r:
      return pref * green_closed(b, 0.0, x, p);
    case ScatteringKind::in_l:
      return pref * green_closed(b, b.L, x, p);
    default:
      throw std::invalid_argument(
          "scattering_from_green: only in_r / in_l are edge-value "
          "extractable");
  }
}

cplx green_planewave_integral(const BarrierParams& b, double x, cplx Q,
                              double kk) {
  if (!(x >= 0.0 && x <= b.L))
    throw std::invalid_argument("green_planewave_integral: x outside [0,L]");

  const MomentumFrame f(b, Q);
  if (std::abs(f.pp) * b.L < 0.15) {
    // mean-value recovery around the removable p' = 0 point; every
    // circle point is far enough from the seam and from the poles
    cplx acc = 0.0;
    const int msamp = 32;
    for (int n = 0; n < msamp; ++n) {
      const double th = 2.0 * PI * n / msamp;
      acc += green_planewave_integral(
          b, x, Q + 0.3 * cplx(std::cos(th), std::sin(th)), kk);
    }
    return acc / double(msamp);
  }

  const cplx t1 = f.om * f.om * std::exp(2.0 * I1 * f.pp * b.L);
  const cplx t2 = f.pl * f.pl;
  check_proximity(f, t1, t2);
  const cplx D2 = t1 - t2;
  const cplx pref = -I1 / (2.0 * f.pp * D2);
  const cplx gm = I1 * (kk - f.pp), gp = I1 * (kk + f.pp);
  const cplx ex = std::exp(I1 * f.pp * x);
  const cplx exr = std::exp(I1 * f.pp * (2.0 * b.L - x));
  const cplx am = b.twomV() * exr - f.pl * f.pl * ex;
  const cplx ap = b.twomV() * ex - f.om * f.om * exr;
  const cplx bm = b.twomV() * exr - f.om * f.om * std::exp(I1 * f.pp * (2.0 * b.L + x));
  const cplx bp = b.twomV() * ex - f.pl * f.pl * std::exp(-I1 * f.pp * x);
  auto E = [&](double a, double c, cplx g) {
    return std::exp(g * a) * (c - a) * phi1(g * (c - a));
  };
  return pref * (am * E(0.0, x, gm) + ap * E(0.0, x, gp) +
                 bm * E(x, b.L, gm) + bp * E(x, b.L, gp));
}

}  // namespace gamow
