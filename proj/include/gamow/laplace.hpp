#pragma once

#include "gamow/barrier.hpp"
#include "gamow/types.hpp"

namespace gamow {

// Matching amplitudes of the driven p-domain equation
//   (d^2/dx^2 + p^2 - 2mV 1_[0,L]) psibar = i alpha e^{ikx},
// radiating at both ends:
//   psibar_I   = A e^{-ipx} + f1 e^{ikx}
//   psibar_II  = M e^{ip'x} + N e^{-ip'x} + f2 e^{ikx}
//   psibar_III = B e^{ip(x-L)} + f1 e^{ikx}
// with f1 = i alpha / (p^2 - k^2) and f2 = i alpha / (p'^2 - k^2).
struct AmplitudeSet {
  cplx A, B, M, N;
  double k = 0.0;
  cplx p;
};

// 4x4 matching solve (value and slope continuous at 0 and L). Refuses p
// within 1e-6 of +-k or of +-sqrt(k^2 + 2mV), where a particular term
// degenerates with the homogeneous basis, and p too close to a zero of
// D; the time-domain route absorbs those points analytically.
AmplitudeSet solve_matching(const BarrierParams& b, double k, cplx p);

// determinant of the matching system; identically equal to D(p)
cplx matching_determinant(const BarrierParams& b, double k, cplx p);

// Evaluate the region form carried by amps at x. The region is taken
// from the caller, not from x, so seam tests can compare two adjacent
// forms at the same point.
cplx psi_bar_eval(const BarrierParams& b, const AmplitudeSet& amps,
                  Region region, double x);
cplx psi_bar_eval_dx(const BarrierParams& b, const AmplitudeSet& amps,
                     Region region, double x);

// solve + evaluate with the region implied by x
cplx psi_bar_direct(const BarrierParams& b, double k, double x, cplx p);

// Interior resolvent route split into its labeled pieces: the
// plane-wave integral i alpha int_0^L G(x',x,p) e^{ikx'} dx' and the
// two boundary terms. Keeping the labels lets the shutter reduction
// (only the G(0,.) term survives) be checked directly.
struct PsiBarSurfaceParts {
  cplx integral;
  cplx surface_L;
  cplx surface_0;
  cplx total() const { return integral + surface_L + surface_0; }
};
PsiBarSurfaceParts psi_bar_green_parts(const BarrierParams& b, double k,
                                       double x, cplx p);

// Resolvent route for any region: region II by the surface-term
// formula, regions I and III propagated off the edge values psibar(0)
// and psibar(L).
cplx psi_bar_green(const BarrierParams& b, double k, Region region, double x,
                   cplx p);

// Truncated resonance expansion of p * psibar(x,p) for real p on the
// inversion contour. Pole sums run over pairs_n mirror pairs with the
// mean of the last two partial sums as the returned truncation; the
// entire parts are the fixed-momentum resolvent values and the free
// pair. tail_estimate (optional) reports how much the final pair moved
// the averaged value, relative to the result.
cplx p_psi_bar_series(const BarrierParams& b, double k, Region region,
                      double x, double p, const PolePairs& poles, int pairs_n,
                      double* tail_estimate = nullptr);

}  // namespace gamow
