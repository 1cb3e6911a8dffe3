#pragma once

#include "gamow/barrier.hpp"
#include "gamow/types.hpp"

namespace gamow {

// The four oscillatory kernels of the time-domain assembly, with
// tau = t/2m and c = x - L:
//   I(x)    = (1/i pi) int p        e^{-i tau p^2} e^{icp} dp
//   I0(x,q) = (1/i pi) int 1/(p-q)  e^{-i tau p^2} e^{icp} dp = -2 M(c,q,t)
//   I1 = -i d/dx I0,  I2 = (-i d/dx)^2 I0
// all in closed form through the Faddeeva function of z_q = i y_q,
// y_q = e^{-i pi/4} (4 tau)^{-1/2} (c - 2 tau q). Kind I takes no q.
enum class KernelKind { I, I0, I1, I2 };

struct KernelRequest {
  KernelKind kind = KernelKind::I0;
  double x = 0.0;
  cplx q;  // pole momentum, +k, or -k; ignored for kind I
  double tau = 0.0;
};

// Closed-form kernel value. Throws std::domain_error for tau <= 0.
cplx kernel(const BarrierParams& b, const KernelRequest& req);

// y_q above; the directional variable whose large-|y| sector decides how
// e^{y^2} erfc(y) behaves in the t -> 0 and t -> infinity limits.
cplx y_argument(const BarrierParams& b, double x, cplx q, double tau);

// Time-dependence factors of the region II/III solutions. Region II
// fills {A_n, B, B_n, S, S_n}; region III fills {A_n, B_0, B_mk, B_n,
// S, S_n, C1..C4} and ignores the region II slots (and vice versa).
struct BracketFactors {
  Region region = Region::II;
  cplx A_n, B_n, S_n;              // per-pole entries at the supplied p_n
  cplx B, S;                       // region II fixed-momentum entries
  cplx B_0, B_mk, C1, C2, C3, C4;  // region III fixed-momentum entries
};

// Kernel route, the authoritative one: every factor from its kernel
// assignment (A_n^II = I1(L,p_n), B^II = C1^III = I0(L,-k), B_0^III =
// I(x), B_mk^III = I2(x,-k), ...). Region I has no printed factor table;
// its series reuses the region III factors in mirrored coordinates.
BracketFactors bracket_factors(const BarrierParams& b, Region region,
                               double x, double t, double k, cplx p_n);

// Literal transcription of the published factor table, kept as the
// comparison route of the transcription detector. Two entries are
// misprints and disagree with the kernel route at O(1): the region II
// A_n (erfc argument lost its p_n and the additive constant carries the
// conjugate phase) and the region III B_mk (exponent built from y_k but
// erfc argument from y_{-k}).
BracketFactors bracket_factors_printed(const BarrierParams& b, Region region,
                                       double x, double t, double k,
                                       cplx p_n);

struct EvolveOptions {
  // pair cap for the pole sums
  int max_pairs = 800;
  // stop once three consecutive pair contributions fall below this,
  // relative to the accumulated head sums
  double pair_tol = 1e-6;
  // short-time guard: below tau = tau_min_scale * 2m L^2 the bracket
  // factors cancel catastrophically and the exact limit e^{ikx} is
  // returned instead of summing
  double tau_min_scale = 1e-5;
};

struct PsiTimeValue {
  cplx value;
  // mean magnitude of the last three pair contributions, relative to
  // |value|: the explicit truncation-quality report
  double tail_estimate = 0.0;
  int pairs_used = 0;
  // set when the tau_min guard fired and value is the plane wave
  bool short_time_limit = false;
};

// psi(x,t) for a plane wave e^{ikx} switched onto the barrier at t = 0.
// Pole sums of the printed region II/III solutions evaluated with the
// two-term Faddeeva asymptotics subtracted from each kernel and the
// subtracted rational parts restored in closed form (Green values and
// their Cauchy-circle derivatives); the plain truncated series does not
// converge in region III, the resummed one does. Region I mirrors
// region III: psi_I(x,t;k) = e^{ikL} psi_III(L-x,t;-k).
// Requires t > 0, k > 0, and x inside the claimed region.
PsiTimeValue psi_t(const BarrierParams& b, double k, Region region, double x,
                   double t, const PolePairs& poles,
                   const EvolveOptions& opts = {});

// Large-t stationary forms with phase e^{-i tau k^2}: region I incident
// plus reflected wave, region II 2ik G(0,x,k), region III T(k) e^{ikx}.
// The formulas extend analytically, so x is not checked against region;
// at x = L the region II and III forms agree.
cplx stationary_limit(const BarrierParams& b, double k, Region region,
                      double x, double t);

// Residuals of the resonance-basis identities at interior x:
//   B: sum u_n(L) u_n(x) / N_n = 0
//   S: sum u_n(0) u_n(x) / N_n = 0
//   Delta: sum p_n u_n(x) (int_0^L u_n sin(pi x'/L) dx') / N_n
//          = sin(pi x/L), the completeness rule against a smooth test
//          function, with the x'-integral in closed form per pair.
// The B/S partial sums oscillate with period two in the pair index and
// only their window average settles, so those residuals report the mean
// of the last four pairwise partial sums. The weighted Delta sum
// converges plainly and is reported bare.
enum class SumRule { B, S, Delta };

double sum_rule_residual(const BarrierParams& b, SumRule which, double x,
                         const PolePairs& poles, int pairs_n);

namespace detail {
// |S^II(tau) + 2 e^{-i tau k^2}|, via the exact collapse of the
// difference to a single upper-half Faddeeva value. The direct
// difference of bracket factors loses the common phase e^{-i tau k^2}
// to rounding once tau k^2 outgrows 1/eps; this form never does, which
// is what makes the 1/sqrt(tau) approach testable at very large tau.
double sii_asymptotic_deviation(const BarrierParams& b, double k, double t);

// |C2 term + C4 term| of the region III assembly at (x, t): the
// e^{-i tau k^2} halves cancel exactly, leaving two reflection
// remainders; same stability rationale as above.
double c2c4_cancellation_residual(const BarrierParams& b, double k, double x,
                                  double t);
}  // namespace detail

}  // namespace gamow
