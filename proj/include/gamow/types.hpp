#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gamow {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;

// Units: hbar = 1. alpha = 2m appears in the driven equation
// (d^2/dx^2 + p^2 - 2mV 1_[0,L]) psibar = i alpha e^{ikx}.
struct BarrierParams {
  double m = 0.5;
  double V = 10.0;
  double L = 1.0;

  double alpha() const { return 2.0 * m; }
  double twomV() const { return 2.0 * m * V; }
  double kappa() const { return std::sqrt(2.0 * m * V); }

  void validate() const {
    if (!(m > 0.0) || !(V > 0.0) || !(L > 0.0))
      throw std::invalid_argument("BarrierParams: m, V, L must be positive");
  }
};

// Derived momenta at a given complex p. Branch of p' = sqrt(p^2 - 2mV) is
// pinned to Im p' >= 0 (ties broken toward Re p' >= 0) so the frame is
// deterministic. pl*om = 2mV exactly by construction: the smaller of the
// two factors is computed as 2mV over the larger to avoid cancellation.
struct MomentumFrame {
  cplx p;   // momentum
  cplx pp;  // p' = sqrt(p^2 - 2mV)
  cplx pl;  // p + p'
  cplx om;  // p - p'

  MomentumFrame(const BarrierParams& b, cplx p_) : p(p_) {
    const double tv = b.twomV();
    pp = std::sqrt(p * p - tv);
    if (pp.imag() < 0.0 || (pp.imag() == 0.0 && pp.real() < 0.0)) pp = -pp;
    const cplx a = p + pp, c = p - pp;
    if (std::abs(a) >= std::abs(c)) {
      pl = a;
      om = tv / a;
    } else {
      om = c;
      pl = tv / c;
    }
  }
};

enum class Region { I, II, III };

// Scattering solution families: incident from the left (in_r, moves
// right), incident from the right (in_l), and the outgoing-only pair.
enum class ScatteringKind { in_r, in_l, out_r, out_l };

inline Region region_of(const BarrierParams& b, double x) {
  if (x < 0.0) return Region::I;
  if (x <= b.L) return Region::II;
  return Region::III;
}

inline const char* region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    default: return "III";
  }
}

// Evaluation requested too close to a zero of D(p); caller should switch
// to residue machinery instead of the closed form.
struct PoleProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root search or quadrature failed to meet its contract; message carries
// the offending box or the achieved error estimate.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gamow
