#include "gamow/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gamow/cxmath.hpp"

namespace gamow {

namespace {

const cplx I1(0.0, 1.0);

struct DTerms {
  cplx t1, t2;  // D = t1 - t2
};

DTerms d_terms(const BarrierParams& b, cplx p) {
  const MomentumFrame f(b, p);
  const cplx e = std::exp(I1 * f.pp * b.L);
  return {f.om * f.om * e, f.pl * f.pl / e};
}

}  // namespace

cplx denominator_D(const BarrierParams& b, cplx p) {
  const auto [t1, t2] = d_terms(b, p);
  return t1 - t2;
}

cplx denominator_D_entire(const BarrierParams& b, cplx p) {
  // D/p' = 2i (p^2 + p'^2) sin(p'L)/p' - 4p cos(p'L), even in p'
  const cplx pp2 = p * p - b.twomV();
  const cplx pp = std::sqrt(pp2);
  return 2.0 * I1 * (p * p + pp2) * sinc_scaled(pp, b.L) -
         4.0 * p * std::cos(pp * b.L);
}

cplx denominator_D_dp(const BarrierParams& b, cplx p) {
  const MomentumFrame f(b, p);
  const cplx e = std::exp(I1 * f.pp * b.L);
  return ((I1 * b.L * p - 2.0) / f.pp) *
         (f.om * f.om * e + f.pl * f.pl / e);
}

double denominator_scaled_residual(const BarrierParams& b, cplx p) {
  const auto [t1, t2] = d_terms(b, p);
  return std::abs(t1 - t2) / (std::abs(t1) + std::abs(t2));
}

namespace detail {

double winding_number(const BarrierParams& b, double re0, double re1,
                      double im0, double im1, int samples_per_side,
                      double& max_step, double& min_scaled) {
  // scaled D: multiply by the positive real e^{-Im p' L} so both terms
  // stay O(|p|^2) on tall boxes; arg is unchanged
  auto dsc = [&](cplx p) {
    const MomentumFrame f(b, p);
    const double sc = std::exp(-f.pp.imag() * b.L);
    const cplx e = std::exp(I1 * f.pp.real() * b.L);  // |e| = 1
    return f.om * f.om * e * sc * sc - f.pl * f.pl / e;
  };
  const cplx corners[5] = {cplx(re0, im0), cplx(re1, im0), cplx(re1, im1),
                           cplx(re0, im1), cplx(re0, im0)};
  double total = 0.0;
  max_step = 0.0;
  min_scaled = 1e300;
  cplx prev = dsc(corners[0]);
  min_scaled = std::min(min_scaled, std::abs(prev));
  for (int side = 0; side < 4; ++side) {
    for (int j = 1; j <= samples_per_side; ++j) {
      const double t = double(j) / samples_per_side;
      const cplx z = corners[side] + t * (corners[side + 1] - corners[side]);
      const cplx cur = dsc(z);
      const double step = std::arg(cur / prev);
      total += step;
      max_step = std::max(max_step, std::abs(step));
      min_scaled = std::min(min_scaled, std::abs(cur));
      prev = cur;
    }
  }
  return total / (2.0 * PI);
}

}  // namespace detail

namespace {

cplx newton_root(const BarrierParams& b, cplx seed, double& residual) {
  cplx p = seed;
  cplx best = p;
  double bestr = denominator_scaled_residual(b, p);
  for (int it = 0; it < 24; ++it) {
    p -= denominator_D(b, p) / denominator_D_dp(b, p);
    const double r = denominator_scaled_residual(b, p);
    if (r < bestr) {
      best = p;
      bestr = r;
    }
    if (bestr < 1e-13) break;
  }
  residual = bestr;
  return best;
}

}  // namespace

std::vector<ResonancePole> find_resonances(const BarrierParams& b, int count) {
  b.validate();
  if (count < 1) throw std::invalid_argument("find_resonances: count >= 1");

  std::vector<ResonancePole> out;
  out.reserve(2 * count);
  for (int n = 1; n <= count; ++n) {
    const double a = n * PI / b.L;
    const double bb = std::log(2.0 * a * a / (b.m * b.V)) / b.L;
    double res = 0.0;
    const cplx p = newton_root(b, cplx(a, -bb), res);
    ResonancePole pole;
    pole.n = n;
    pole.p = p;
    pole.N = -8.0 * b.m * b.V * (p * b.L + cplx(0.0, 2.0));
    pole.residual = res;
    out.push_back(pole);
  }

  for (int i = 0; i < count; ++i) {
    const cplx p = out[i].p;
    const double ar = std::arg(p);
    if (!(ar > -PI / 4.0 && ar < 0.0)) {
      std::ostringstream msg;
      msg << "find_resonances: pole " << i + 1 << " left the sector: ("
          << p.real() << "," << p.imag() << ")";
      throw ConvergenceError(msg.str());
    }
    if (out[i].residual > 5e-12) {
      std::ostringstream msg;
      msg << "find_resonances: Newton stalled at pole " << i + 1
          << ", scaled residual " << out[i].residual;
      throw ConvergenceError(msg.str());
    }
    if (i > 0) {
      if (out[i].p.real() <= out[i - 1].p.real())
        throw ConvergenceError("find_resonances: ordering broken");
      if (std::abs(out[i].p - out[i - 1].p) < 1e-8 * std::abs(out[i].p))
        throw ConvergenceError("find_resonances: duplicate root");
    }
  }

  // argument-principle verification over the enclosing rectangle
  {
    const double aN = count * PI / b.L;
    const double bN = std::log(2.0 * aN * aN / (b.m * b.V)) / b.L;
    const double re0 = 0.05, re1 = aN + 2.0;
    const double im0 = -(bN + 3.0), im1 = -0.02;
    const int nside = std::max(4000, 100 * count);
    double max_step = 0.0, min_sc = 0.0;
    const double wind = detail::winding_number(b, re0, re1, im0, im1, nside,
                                               max_step, min_sc);
    const long w = std::lround(wind);
    if (std::abs(wind - double(w)) > 1e-3 || w != count) {
      // localize: per-seed sub-boxes, report the first disagreement
      for (int n = 1; n <= count; ++n) {
        const double a = n * PI / b.L;
        const double lo = a - PI / (2.0 * b.L), hi = a + PI / (2.0 * b.L);
        double ms = 0.0, msc = 0.0;
        const double wn =
            detail::winding_number(b, lo, hi, im0, im1, 3000, ms, msc);
        if (std::lround(wn) != 1) {
          std::ostringstream msg;
          msg << "find_resonances: argument-principle count " << wn
              << " != 1 in box [" << lo << "," << hi << "]x[" << im0 << ","
              << im1 << "]";
          throw ConvergenceError(msg.str());
        }
      }
      std::ostringstream msg;
      msg << "find_resonances: global winding " << wind << " != " << count
          << " over [" << re0 << "," << re1 << "]x[" << im0 << "," << im1
          << "]";
      throw ConvergenceError(msg.str());
    }
  }

  for (int n = 1; n <= count; ++n) {
    ResonancePole mir;
    mir.n = -n;
    mir.p = -std::conj(out[n - 1].p);
    mir.N = -8.0 * b.m * b.V * (mir.p * b.L + cplx(0.0, 2.0));
    mir.residual = denominator_scaled_residual(b, mir.p);
    out.push_back(mir);
  }
  return out;
}

cplx resonant_u(const BarrierParams& b, const ResonancePole& pole, double x) {
  const MomentumFrame f(b, pole.p);
  const cplx u0 = -2.0 * f.pp;
  if (x < 0.0) return u0 * std::exp(-I1 * pole.p * x);
  // family sign from the half-width combinations; W + U or W - U vanishes
  // at a zero of D
  const cplx W = f.om * std::exp(I1 * f.pp * b.L * 0.5);
  const cplx U = f.pl * std::exp(-I1 * f.pp * b.L * 0.5);
  const double s = std::abs(W + U) < std::abs(W - U) ? 1.0 : -1.0;
  if (x > b.L) {
    const cplx uL = -s * 2.0 * f.pp;
    return uL * std::exp(I1 * pole.p * (x - b.L));
  }
  const double xe = (x > b.L / 2.0) ? b.L - x : x;
  const double sign = (x > b.L / 2.0) ? s : 1.0;
  return sign *
         (f.om * std::exp(I1 * f.pp * xe) - f.pl * std::exp(-I1 * f.pp * xe));
}

cplx resonance_norm(const BarrierParams& b, const ResonancePole& pole) {
  return -8.0 * b.m * b.V * (pole.p * b.L + cplx(0.0, 2.0));
}

cplx resonance_norm_quadrature(const BarrierParams& b,
                               const ResonancePole& pole) {
  const auto gl = gauss_legendre(8);
  cplx acc = 0.0;
  const int panels = 64;
  for (int pan = 0; pan < panels; ++pan) {
    const double a = b.L * pan / panels, c = b.L * (pan + 1) / panels;
    for (const auto& [xi, wi] : gl) {
      const double x = 0.5 * (c - a) * xi + 0.5 * (a + c);
      const cplx u = resonant_u(b, pole, x);
      acc += 0.5 * (c - a) * wi * u * u;
    }
  }
  const cplx u0 = resonant_u(b, pole, 0.0);
  const cplx uL = resonant_u(b, pole, b.L);
  return I1 * (u0 * u0 + uL * uL) + 2.0 * pole.p * acc;
}

cplx PolePack::u(size_t i, double x) const {
  if (x > b.L / 2.0) {
    const double xe = b.L - x;
    return s[i] *
           (om[i] * std::exp(I1 * pp[i] * xe) - pl[i] * std::exp(-I1 * pp[i] * xe));
  }
  return om[i] * std::exp(I1 * pp[i] * x) - pl[i] * std::exp(-I1 * pp[i] * x);
}

cplx PolePack::J(size_t i, double kk) const {
  const cplx c1 = I1 * (kk + pp[i]);
  const cplx E1 = b.L * phi1(c1 * b.L);
  const cplx F = -s[i] * om[i];
  return om[i] * E1 -
         (F * std::exp(I1 * kk * b.L) - pl[i]) / (I1 * (kk - pp[i]));
}

PolePack make_pole_pack(const BarrierParams& b, const std::vector<cplx>& p) {
  PolePack pk;
  pk.b = b;
  const size_t n = p.size();
  pk.p = p;
  pk.pp.resize(n);
  pk.pl.resize(n);
  pk.om.resize(n);
  pk.N.resize(n);
  pk.s.resize(n);
  pk.u0.resize(n);
  pk.uL.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const MomentumFrame f(b, p[i]);
    pk.pp[i] = f.pp;
    pk.pl[i] = f.pl;
    pk.om[i] = f.om;
    const cplx W = f.om * std::exp(I1 * f.pp * b.L * 0.5);
    const cplx U = f.pl * std::exp(-I1 * f.pp * b.L * 0.5);
    const double aplus = std::abs(W + U), aminus = std::abs(W - U);
    pk.s[i] = aplus < aminus ? 1.0 : -1.0;
    const double ratio =
        std::min(aplus, aminus) / std::max(aplus, aminus);
    if (ratio > 1e-6)
      throw ConvergenceError(
          "make_pole_pack: family classification unclear (point is not "
          "near a zero of D)");
    pk.u0[i] = -2.0 * f.pp;
    pk.uL[i] = -pk.s[i] * 2.0 * f.pp;
    pk.N[i] = -8.0 * b.m * b.V * (p[i] * b.L + cplx(0.0, 2.0));
  }
  return pk;
}

PolePairs make_pole_pairs(const BarrierParams& b, int count) {
  const auto res = find_resonances(b, count);
  std::vector<cplx> pos(count), neg(count);
  for (int i = 0; i < count; ++i) {
    pos[i] = res[i].p;
    neg[i] = -std::conj(res[i].p);
  }
  return {make_pole_pack(b, pos), make_pole_pack(b, neg)};
}

}  // namespace gamow
