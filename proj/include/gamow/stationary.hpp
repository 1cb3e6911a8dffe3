#pragma once

#include "gamow/types.hpp"

namespace gamow {

// Stationary scattering state at real k > 0, amplitudes from the 4x4
// matching solve (value and slope continuous at 0 and L, one radiating
// boundary condition selecting the kind). Basis conventions, all without
// the energy-delta prefactor:
//   in_r : I  e^{ikx} + R e^{-ikx}         III  T e^{ikx}
//   in_l : I  T e^{-ikx}                   III  e^{-ik(x-L)} + R e^{ik(x-L)}
//   out_r: I  T e^{ikx}                    III  e^{ik(x-L)} + R e^{-ik(x-L)}
//   out_l: I  e^{-ikx} + R e^{ikx}         III  T e^{-ik(x-L)}
// Interior is always P e^{ip'x} + Q e^{-ip'x}. r/l labels the moving
// character of the unit-amplitude wave, not the side it comes from.
struct ScatteringSolution {
  ScatteringKind kind;
  double k = 0.0;
  cplx R, P, Q, T;
};

ScatteringSolution solve_scattering(const BarrierParams& b,
                                    ScatteringKind kind, double k);

// Piecewise solution including the delta-in-energy normalization factor
// (2 pi)^{-1/2} (m/k)^{1/2}. The one-argument-per-call form re-solves;
// pass a ScatteringSolution for grid evaluation.
cplx scattering_phi(const BarrierParams& b, ScatteringKind kind, double k,
                    double x);
cplx scattering_phi(const BarrierParams& b, const ScatteringSolution& s,
                    double x);

// analytic d/dx of the same normalized solution
cplx scattering_phi_dx(const BarrierParams& b, const ScatteringSolution& s,
                       double x);

// T(k) = 2ik G(0,L,k) e^{-ikL}: the transmitted amplitude read off the
// resolvent. Cross-checked against the matching amplitude.
cplx transmission(const BarrierParams& b, double k);

// R(k) = 2ik G(0,0,k) - 1, same route
cplx reflection(const BarrierParams& b, double k);

}  // namespace gamow
