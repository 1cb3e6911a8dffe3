#pragma once

#include <vector>

#include "gamow/types.hpp"

namespace gamow {

// A located zero of D(p) in the fourth quadrant (n > 0) or its mirror
// image -conj(p) (n < 0). residual is the scale-free size of D at p:
// |t1 - t2| / (|t1| + |t2|) over the two exponential terms of D.
struct ResonancePole {
  int n = 0;
  cplx p;
  cplx N;
  double residual = 0.0;
};

// D(p) = om^2 e^{ip'L} - pl^2 e^{-ip'L}; its zeros are the resonance
// momenta. Antisymmetric under the p' branch flip, so zeros do not
// depend on the branch choice.
cplx denominator_D(const BarrierParams& b, cplx p);

// D/p', entire in p (even series in p'); preferred residual gauge near
// p' = 0.
cplx denominator_D_entire(const BarrierParams& b, cplx p);

// analytic dD/dp = ((iLp - 2)/p') (om^2 e^{ip'L} + pl^2 e^{-ip'L})
cplx denominator_D_dp(const BarrierParams& b, cplx p);

double denominator_scaled_residual(const BarrierParams& b, cplx p);

// Newton from the large-n seeds n pi/L - i ln(2(n pi/L)^2/(mV))/L with
// best-iterate selection, then sector/order/dedup checks and an
// argument-principle count over the enclosing rectangle. Returns
// n = 1..count followed by the mirrors n = -1..-count. Throws
// ConvergenceError naming the offending box if the count disagrees.
std::vector<ResonancePole> find_resonances(const BarrierParams& b, int count);

// Piecewise Gamow eigenfunction for the pole: (-2p')e^{-ipx} left of the
// barrier, om e^{ip'x} - pl e^{-ip'x} inside (evaluated in the reflected
// half for x > L/2, identical at zeros of D), u(L) e^{ip(x-L)} beyond.
cplx resonant_u(const BarrierParams& b, const ResonancePole& pole, double x);

// closed form N_n = -8mV(p_n L + 2i)
cplx resonance_norm(const BarrierParams& b, const ResonancePole& pole);

// definitional route i(u^2(0) + u^2(L)) + 2p int_0^L u^2 dx, composite
// 64-panel Gauss-Legendre; used to cross-check the closed form
cplx resonance_norm_quadrature(const BarrierParams& b,
                               const ResonancePole& pole);

// Structure-of-arrays view over one family of poles (either the located
// fourth-quadrant set or its mirror), with the derived per-pole pieces
// every series needs.
struct PolePack {
  BarrierParams b;
  std::vector<cplx> p, pp, pl, om, N;
  std::vector<double> s;  // family sign: u(L) = -s 2p'
  std::vector<cplx> u0, uL;

  size_t size() const { return p.size(); }
  cplx u(size_t i, double x) const;
  // int_0^L u_i e^{i kk x} dx, stabilized with pl e^{-ip'L} = -s om
  cplx J(size_t i, double kk) const;
};

// pack from explicit pole momenta (positive family or mirrors)
PolePack make_pole_pack(const BarrierParams& b, const std::vector<cplx>& p);

// positive-family momenta plus aligned mirror momenta for pair sums
struct PolePairs {
  PolePack pos;
  PolePack neg;
  size_t pairs() const { return pos.size(); }
};
PolePairs make_pole_pairs(const BarrierParams& b, int count);

namespace detail {
// Winding number of D along the rectangle boundary [re0,re1]x[im0,im1],
// counterclockwise, by phase continuation over sampled points. Returns
// the (near-integer) total phase turn / 2 pi; max_step and min_scaled
// report the largest phase jump between samples and the smallest scaled
// |D| met on the boundary.
double winding_number(const BarrierParams& b, double re0, double re1,
                      double im0, double im1, int samples_per_side,
                      double& max_step, double& min_scaled);
}  // namespace detail

}  // namespace gamow
