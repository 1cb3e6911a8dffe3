#include "gamow/laplace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gamow/greenfn.hpp"

namespace gamow {

namespace {

constexpr cplx I1{0.0, 1.0};

// The particular terms carry 1/(p^2 - k^2) and 1/(p'^2 - k^2); both
// routes refuse the degeneracies rather than regularize them, since the
// time-domain assembly absorbs these poles into erfc-type kernels.
void check_p_admissible(const BarrierParams& b, double k, cplx p) {
  if (!(k > 0.0))
    throw std::domain_error("psi_bar: k must be positive");
  if (std::abs(p - k) < 1e-6 || std::abs(p + k) < 1e-6)
    throw std::domain_error(
        "psi_bar: p within 1e-6 of +-k; use the pole-series or time-domain "
        "route");
  const double kd = std::sqrt(k * k + b.twomV());
  if (std::abs(p - kd) < 1e-6 || std::abs(p + kd) < 1e-6)
    throw std::domain_error(
        "psi_bar: p within 1e-6 of the interior drive degeneracy "
        "+-sqrt(k^2 + 2mV)");
  if (denominator_scaled_residual(b, p) < 1e-12) {
    std::ostringstream msg;
    msg << "psi_bar: p = (" << p.real() << "," << p.imag()
        << ") is at a zero of D; matching system singular";
    throw PoleProximityError(msg.str());
  }
}

Eigen::Matrix4cd matching_matrix(const BarrierParams& b, cplx p,
                                 const MomentumFrame& f) {
  const cplx ip = I1 * p, ipp = I1 * f.pp;
  const cplx ep = std::exp(I1 * f.pp * b.L), em = 1.0 / ep;
  Eigen::Matrix4cd A;
  A << 1.0, -1.0, -1.0, 0.0,
       -ip, -ipp, ipp, 0.0,
       0.0, ep, em, -1.0,
       0.0, ipp * ep, -ipp * em, -ip;
  return A;
}

struct Particular {
  cplx f1, f2;
};

Particular particular_terms(const BarrierParams& b, double k, cplx p,
                            const MomentumFrame& f) {
  const cplx ia = I1 * b.alpha();
  return {ia / (p * p - k * k), ia / (f.pp * f.pp - k * k)};
}

}  // namespace

AmplitudeSet solve_matching(const BarrierParams& b, double k, cplx p) {
  b.validate();
  check_p_admissible(b, k, p);
  const MomentumFrame f(b, p);
  const auto [f1, f2] = particular_terms(b, k, p, f);
  const cplx eikL = std::exp(I1 * k * b.L);
  Eigen::Vector4cd rhs;
  rhs << f2 - f1, I1 * k * (f2 - f1), (f1 - f2) * eikL,
      I1 * k * (f1 - f2) * eikL;
  const Eigen::Vector4cd sol =
      matching_matrix(b, p, f).partialPivLu().solve(rhs);
  AmplitudeSet amps;
  amps.A = sol(0);
  amps.M = sol(1);
  amps.N = sol(2);
  amps.B = sol(3);
  amps.k = k;
  amps.p = p;
  return amps;
}

cplx matching_determinant(const BarrierParams& b, double k, cplx p) {
  b.validate();
  if (!(k > 0.0))
    throw std::domain_error("matching_determinant: k must be positive");
  const MomentumFrame f(b, p);
  return matching_matrix(b, p, f).determinant();
}

cplx psi_bar_eval(const BarrierParams& b, const AmplitudeSet& amps,
                  Region region, double x) {
  const cplx p = amps.p;
  const MomentumFrame f(b, p);
  const auto [f1, f2] = particular_terms(b, amps.k, p, f);
  const cplx drive = std::exp(I1 * amps.k * x);
  switch (region) {
    case Region::I:
      return amps.A * std::exp(-I1 * p * x) + f1 * drive;
    case Region::II:
      return amps.M * std::exp(I1 * f.pp * x) +
             amps.N * std::exp(-I1 * f.pp * x) + f2 * drive;
    default:
      return amps.B * std::exp(I1 * p * (x - b.L)) + f1 * drive;
  }
}

cplx psi_bar_eval_dx(const BarrierParams& b, const AmplitudeSet& amps,
                     Region region, double x) {
  const cplx p = amps.p;
  const MomentumFrame f(b, p);
  const auto [f1, f2] = particular_terms(b, amps.k, p, f);
  const cplx ik = I1 * amps.k;
  const cplx drive = std::exp(ik * x);
  switch (region) {
    case Region::I:
      return -I1 * p * amps.A * std::exp(-I1 * p * x) + ik * f1 * drive;
    case Region::II:
      return I1 * f.pp *
                 (amps.M * std::exp(I1 * f.pp * x) -
                  amps.N * std::exp(-I1 * f.pp * x)) +
             ik * f2 * drive;
    default:
      return I1 * p * amps.B * std::exp(I1 * p * (x - b.L)) +
             ik * f1 * drive;
  }
}

cplx psi_bar_direct(const BarrierParams& b, double k, double x, cplx p) {
  return psi_bar_eval(b, solve_matching(b, k, p), region_of(b, x), x);
}

PsiBarSurfaceParts psi_bar_green_parts(const BarrierParams& b, double k,
                                       double x, cplx p) {
  b.validate();
  check_p_admissible(b, k, p);
  if (x < 0.0 || x > b.L)
    throw std::invalid_argument(
        "psi_bar_green_parts: x must lie on the barrier interval");
  const double al = b.alpha();
  PsiBarSurfaceParts parts;
  parts.integral = I1 * al * green_planewave_integral(b, x, p, k);
  parts.surface_L = -al / (p + k) * green_closed(b, b.L, x, p) *
                    std::exp(I1 * k * b.L);
  parts.surface_0 = -al / (p - k) * green_closed(b, 0.0, x, p);
  return parts;
}

cplx psi_bar_green(const BarrierParams& b, double k, Region region, double x,
                   cplx p) {
  b.validate();
  check_p_admissible(b, k, p);
  if (region_of(b, x) != region)
    throw std::invalid_argument("psi_bar_green: region inconsistent with x");
  if (region == Region::II) return psi_bar_green_parts(b, k, x, p).total();

  const MomentumFrame f(b, p);
  const cplx f1 = particular_terms(b, k, p, f).f1;
  if (region == Region::I) {
    const cplx edge = psi_bar_green_parts(b, k, 0.0, p).total();
    return std::exp(-I1 * p * x) * (edge - f1) + f1 * std::exp(I1 * k * x);
  }
  const cplx edge = psi_bar_green_parts(b, k, b.L, p).total();
  return std::exp(I1 * p * (x - b.L)) * (edge - f1 * std::exp(I1 * k * b.L)) +
         f1 * std::exp(I1 * k * x);
}

namespace {

// constant completing the Mittag-Leffler expansion of the edge overlap:
// c0 = lim [ sum (uL/N) J / (Q - p_n) - int_0^L G(L,y,Q) e^{i kk y} dy ];
// estimated from the passed pairs by Richardson across two doublings
cplx series_c0(const BarrierParams& b, const PolePairs& poles, int pairs_n,
               double kk) {
  const cplx Q(1.3, 0.4);
  const int n1 = pairs_n / 4, n2 = pairs_n / 2;
  cplx acc = 0.0, v1 = 0.0, v2 = 0.0;
  for (int j = 0; j < pairs_n; ++j) {
    for (const PolePack* pk : {&poles.pos, &poles.neg}) {
      acc += (pk->uL[j] / pk->N[j]) * pk->J(j, kk) / (Q - pk->p[j]);
    }
    if (j == n1 - 1) v1 = acc;
    if (j == n2 - 1) v2 = acc;
  }
  const cplx r1 = 2.0 * v2 - v1, r2 = 2.0 * acc - v2;
  return (4.0 * r2 - r1) / 3.0 - green_planewave_integral(b, b.L, Q, kk);
}

cplx series_region_III(const BarrierParams& b, double kk, double x, double p,
                       const PolePairs& poles, int pairs_n, double* tail) {
  const double al = b.alpha();
  const cplx ex = std::exp(I1 * p * (x - b.L));
  const cplx eL = std::exp(I1 * kk * b.L);
  cplx s1 = 0.0, s3 = 0.0, s4 = 0.0;
  cplx q1 = 0.0, q3 = 0.0, q4 = 0.0, u1 = 0.0, u3 = 0.0, u4 = 0.0;
  for (int j = 0; j < pairs_n; ++j) {
    for (const PolePack* pk : {&poles.pos, &poles.neg}) {
      const cplx pn = pk->p[j], Nn = pk->N[j];
      const cplx uLn = pk->uL[j], u0n = pk->u0[j];
      const cplx d = p - pn;
      s1 += (p / d) * (uLn / Nn) * pk->J(j, kk);
      s3 += (p * p / d) * (uLn * uLn / Nn) / (pn * (kk + pn));
      s4 += (pn / d) * (u0n * uLn / Nn) / (kk - pn);
    }
    if (j == pairs_n - 3) {
      u1 = s1;
      u3 = s3;
      u4 = s4;
    }
    if (j == pairs_n - 2) {
      q1 = s1;
      q3 = s3;
      q4 = s4;
    }
  }
  const cplx a1 = 0.5 * (s1 + q1), a3 = 0.5 * (s3 + q3), a4 = 0.5 * (s4 + q4);
  const cplx c0 = series_c0(b, poles, pairs_n, kk);
  const cplx GLL0 = green_closed(b, b.L, b.L, cplx(0.0));
  const cplx GLLmk = green_closed(b, b.L, b.L, cplx(-kk));
  const cplx G0Lk = green_closed(b, 0.0, b.L, cplx(kk));
  const cplx ia = I1 * al;
  const cplx val = ia * ex * (a1 - p * c0) -
                   al * (p / kk) * GLL0 * ex * eL +
                   (p * p / (p + kk)) * (al / kk) * GLLmk * ex * eL -
                   al * a3 * ex * eL + al * a4 * ex +
                   al * (kk / (kk - p)) * G0Lk * ex +
                   0.5 * ia * (1.0 / (p + kk) + 1.0 / (p - kk)) *
                       (std::exp(I1 * kk * x) - ex * eL);
  if (tail) {
    // what the final pair moved the averaged sums by
    const double last = 0.5 * (std::abs(ia * ex * (s1 - u1)) +
                               std::abs(al * (s3 - u3) * ex * eL) +
                               std::abs(al * (s4 - u4) * ex));
    *tail = last / std::max(std::abs(val), 1e-300);
  }
  return val;
}

cplx series_region_II(const BarrierParams& b, double kk, double x, double p,
                      const PolePairs& poles, int pairs_n, double* tail) {
  const double al = b.alpha();
  const cplx eL = std::exp(I1 * kk * b.L);
  cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
  cplx q1 = 0.0, q2 = 0.0, q3 = 0.0, u1 = 0.0, u2 = 0.0, u3 = 0.0;
  for (int j = 0; j < pairs_n; ++j) {
    for (const PolePack* pk : {&poles.pos, &poles.neg}) {
      const cplx pn = pk->p[j], Nn = pk->N[j];
      const cplx ux = pk->u(j, x);
      const cplx d = p - pn;
      s1 += (p / d) * (ux / Nn) * pk->J(j, kk);
      s2 += (pn / d) * (pk->uL[j] * ux / Nn) / (kk + pn);
      s3 += (pn / d) * (pk->u0[j] * ux / Nn) / (kk - pn);
    }
    if (j == pairs_n - 3) {
      u1 = s1;
      u2 = s2;
      u3 = s3;
    }
    if (j == pairs_n - 2) {
      q1 = s1;
      q2 = s2;
      q3 = s3;
    }
  }
  const cplx a1 = 0.5 * (s1 + q1), a2 = 0.5 * (s2 + q2), a3 = 0.5 * (s3 + q3);
  const cplx val = I1 * al * a1 +
                   al * (kk / (p + kk)) * green_closed(b, b.L, x, cplx(-kk)) *
                       eL -
                   al * eL * a2 -
                   al * (kk / (p - kk)) * green_closed(b, 0.0, x, cplx(kk)) +
                   al * a3;
  if (tail) {
    // what the final pair moved the averaged sums by
    const double last = 0.5 * (std::abs(I1 * al * (s1 - u1)) +
                               std::abs(al * eL * (s2 - u2)) +
                               std::abs(al * (s3 - u3)));
    *tail = last / std::max(std::abs(val), 1e-300);
  }
  return val;
}

}  // namespace

cplx p_psi_bar_series(const BarrierParams& b, double k, Region region,
                      double x, double p, const PolePairs& poles, int pairs_n,
                      double* tail_estimate) {
  b.validate();
  if (!(k > 0.0))
    throw std::domain_error("p_psi_bar_series: k must be positive");
  if (pairs_n < 8 || size_t(pairs_n) > poles.pairs())
    throw std::invalid_argument(
        "p_psi_bar_series: need 8 <= pairs_n <= poles.pairs()");
  if (std::abs(p - k) < 1e-6 || std::abs(p + k) < 1e-6)
    throw std::domain_error(
        "p_psi_bar_series: p within 1e-6 of +-k; the free terms are "
        "singular there");
  if (region_of(b, x) != region)
    throw std::invalid_argument(
        "p_psi_bar_series: region inconsistent with x");
  switch (region) {
    case Region::I:
      // mirror of region III: psibar_I(x; k) = e^{ikL} psibar_III(L-x; -k)
      return std::exp(I1 * k * b.L) *
             series_region_III(b, -k, b.L - x, p, poles, pairs_n,
                               tail_estimate);
    case Region::II:
      return series_region_II(b, k, x, p, poles, pairs_n, tail_estimate);
    default:
      return series_region_III(b, k, x, p, poles, pairs_n, tail_estimate);
  }
}

}  // namespace gamow
