#include "gamow/stationary.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gamow/greenfn.hpp"

namespace gamow {

namespace {

constexpr cplx I1{0.0, 1.0};

double delta_norm(const BarrierParams& b, double k) {
  return std::sqrt(b.m / k) / std::sqrt(2.0 * PI);
}

}  // namespace

ScatteringSolution solve_scattering(const BarrierParams& b,
                                    ScatteringKind kind, double k) {
  b.validate();
  if (!(k > 0.0))
    throw std::domain_error("solve_scattering: k must be positive");

  const MomentumFrame f(b, k);
  const cplx ik = I1 * cplx(k), ipp = I1 * f.pp;
  const cplx ep = std::exp(I1 * f.pp * b.L), em = 1.0 / ep;

  // rows: value at 0, slope at 0, value at L, slope at L; the exterior
  // unknown on each side is the non-unit amplitude of that kind
  Eigen::Matrix4cd A;
  Eigen::Vector4cd rhs;
  switch (kind) {
    case ScatteringKind::in_r:
      // unknowns R, P, Q, A3 with III = A3 e^{ik(x-L)}
      A << -1.0, 1.0, 1.0, 0.0,
           ik, ipp, -ipp, 0.0,
           0.0, ep, em, -1.0,
           0.0, ipp * ep, -ipp * em, -ik;
      rhs << 1.0, ik, 0.0, 0.0;
      break;
    case ScatteringKind::in_l:
      // unknowns T, P, Q, R
      A << -1.0, 1.0, 1.0, 0.0,
           ik, ipp, -ipp, 0.0,
           0.0, ep, em, -1.0,
           0.0, ipp * ep, -ipp * em, -ik;
      rhs << 0.0, 0.0, 1.0, -ik;
      break;
    case ScatteringKind::out_r:
      // unknowns T, P, Q, R
      A << -1.0, 1.0, 1.0, 0.0,
           -ik, ipp, -ipp, 0.0,
           0.0, ep, em, -1.0,
           0.0, ipp * ep, -ipp * em, ik;
      rhs << 0.0, 0.0, 1.0, ik;
      break;
    case ScatteringKind::out_l:
      // unknowns R, P, Q, T
      A << -1.0, 1.0, 1.0, 0.0,
           -ik, ipp, -ipp, 0.0,
           0.0, ep, em, -1.0,
           0.0, ipp * ep, -ipp * em, ik;
      rhs << 1.0, -ik, 0.0, 0.0;
      break;
    default:
      throw std::invalid_argument("solve_scattering: unknown kind");
  }

  const Eigen::Vector4cd sol = A.partialPivLu().solve(rhs);
  ScatteringSolution s;
  s.kind = kind;
  s.k = k;
  switch (kind) {
    case ScatteringKind::in_r:
      s.R = sol(0);
      s.P = sol(1);
      s.Q = sol(2);
      s.T = sol(3) * std::exp(-ik * b.L);  // III stored on the e^{ikx} basis
      break;
    case ScatteringKind::in_l:
    case ScatteringKind::out_r:
      s.T = sol(0);
      s.P = sol(1);
      s.Q = sol(2);
      s.R = sol(3);
      break;
    case ScatteringKind::out_l:
    default:
      s.R = sol(0);
      s.P = sol(1);
      s.Q = sol(2);
      s.T = sol(3);
      break;
  }
  return s;
}

cplx scattering_phi(const BarrierParams& b, const ScatteringSolution& s,
                    double x) {
  const double k = s.k;
  const MomentumFrame f(b, k);
  const cplx ik = I1 * cplx(k);
  cplx v;
  if (x >= 0.0 && x <= b.L) {
    v = s.P * std::exp(I1 * f.pp * x) + s.Q * std::exp(-I1 * f.pp * x);
  } else if (x < 0.0) {
    switch (s.kind) {
      case ScatteringKind::in_r:
        v = std::exp(ik * x) + s.R * std::exp(-ik * x);
        break;
      case ScatteringKind::in_l:
        v = s.T * std::exp(-ik * x);
        break;
      case ScatteringKind::out_r:
        v = s.T * std::exp(ik * x);
        break;
      default:
        v = std::exp(-ik * x) + s.R * std::exp(ik * x);
        break;
    }
  } else {
    const double xl = x - b.L;
    switch (s.kind) {
      case ScatteringKind::in_r:
        v = s.T * std::exp(ik * x);
        break;
      case ScatteringKind::in_l:
        v = std::exp(-ik * xl) + s.R * std::exp(ik * xl);
        break;
      case ScatteringKind::out_r:
        v = std::exp(ik * xl) + s.R * std::exp(-ik * xl);
        break;
      default:
        v = s.T * std::exp(-ik * xl);
        break;
    }
  }
  return delta_norm(b, k) * v;
}

cplx scattering_phi_dx(const BarrierParams& b, const ScatteringSolution& s,
                       double x) {
  const double k = s.k;
  const MomentumFrame f(b, k);
  const cplx ik = I1 * cplx(k), ipp = I1 * f.pp;
  cplx v;
  if (x >= 0.0 && x <= b.L) {
    v = ipp * (s.P * std::exp(I1 * f.pp * x) - s.Q * std::exp(-I1 * f.pp * x));
  } else if (x < 0.0) {
    switch (s.kind) {
      case ScatteringKind::in_r:
        v = ik * (std::exp(ik * x) - s.R * std::exp(-ik * x));
        break;
      case ScatteringKind::in_l:
        v = -ik * s.T * std::exp(-ik * x);
        break;
      case ScatteringKind::out_r:
        v = ik * s.T * std::exp(ik * x);
        break;
      default:
        v = ik * (-std::exp(-ik * x) + s.R * std::exp(ik * x));
        break;
    }
  } else {
    const double xl = x - b.L;
    switch (s.kind) {
      case ScatteringKind::in_r:
        v = ik * s.T * std::exp(ik * x);
        break;
      case ScatteringKind::in_l:
        v = ik * (-std::exp(-ik * xl) + s.R * std::exp(ik * xl));
        break;
      case ScatteringKind::out_r:
        v = ik * (std::exp(ik * xl) - s.R * std::exp(-ik * xl));
        break;
      default:
        v = -ik * s.T * std::exp(-ik * xl);
        break;
    }
  }
  return delta_norm(b, k) * v;
}

cplx scattering_phi(const BarrierParams& b, ScatteringKind kind, double k,
                    double x) {
  return scattering_phi(b, solve_scattering(b, kind, k), x);
}

cplx transmission(const BarrierParams& b, double k) {
  if (!(k > 0.0)) throw std::domain_error("transmission: k must be positive");
  const cplx ik = I1 * cplx(k);
  return 2.0 * ik * green_closed(b, 0.0, b.L, k) * std::exp(-ik * b.L);
}

cplx reflection(const BarrierParams& b, double k) {
  if (!(k > 0.0)) throw std::domain_error("reflection: k must be positive");
  return 2.0 * I1 * cplx(k) * green_closed(b, 0.0, 0.0, k) - 1.0;
}

}  // namespace gamow
