#include <cmath>
#include <random>

#include "doctest.h"
#include "gamow/cxmath.hpp"
#include "gamow/greenfn.hpp"

using namespace gamow;

namespace {
const cplx I1(0.0, 1.0);

cplx rand_p(std::mt19937& rng) {
  std::uniform_real_distribution<double> re(0.3, 6.0), im(-0.6, 0.6);
  for (;;) {
    const cplx p(re(rng), im(rng));
    const MomentumFrame f(BarrierParams{}, p);
    if (std::abs(f.pp) * 1.0 > 0.35) return p;  // stay off the p' seam
  }
}
}  // namespace

TEST_CASE("green: frozen values across the evaluation branches") {
  const BarrierParams b;
  CHECK(std::abs(green_closed(b, 0.0, 0.0, cplx(0.0)) -
                 cplx(-0.31736301042196885)) < 1e-14);
  // continuity into the dedicated p = 0 form
  CHECK(std::abs(green_closed(b, 0.0, 0.0, cplx(1e-6)) -
                 green_closed(b, 0.0, 0.0, cplx(0.0))) < 1e-6);

  // one point per branch: exponential, trigonometric, p' = 0 exactly
  CHECK(std::abs(green_closed(b, 0.3, 0.7, cplx(3.2015621187164243)) -
                 cplx(-0.07528384256938267, -0.14592984118818017)) < 1e-14);
  CHECK(std::abs(green_closed(b, 0.3, 0.7, cplx(3.1685959035509716)) -
                 cplx(-0.078074874229559194, -0.14098616094162006)) < 1e-14);
  CHECK(std::abs(green_closed(b, 0.3, 0.7, cplx(b.kappa())) -
                 cplx(-0.078571428571428556, -0.140043724950314)) < 1e-14);
  CHECK(std::abs(green_closed(b, 0.3, 0.7, cplx(0.0)) -
                 cplx(-0.059125211034888166)) < 1e-14);

  CHECK_THROWS_AS((void)green_closed(b, -0.1, 0.5, cplx(2.0)),
                  std::invalid_argument);
}

TEST_CASE("green: symmetry in x and y") {
  const BarrierParams b;
  std::mt19937 rng(90125);
  std::uniform_real_distribution<double> xs(0.0, b.L);
  for (int i = 0; i < 100; ++i) {
    const double x = xs(rng), y = xs(rng);
    const cplx p = rand_p(rng);
    const cplx a = green_closed(b, x, y, p);
    const cplx c = green_closed(b, y, x, p);
    CHECK(std::abs(a - c) <= 1e-13 * std::abs(a));
  }
}

TEST_CASE("green: unit derivative jump across the diagonal") {
  const BarrierParams b;
  const double h = 1e-6 * b.L;
  // one-sided five-point first derivatives on each side of x = y
  auto jump = [&](double y0, cplx p) {
    auto g = [&](double x) { return green_closed(b, x, y0, p); };
    const cplx dplus = (-25.0 * g(y0) + 48.0 * g(y0 + h) - 36.0 * g(y0 + 2 * h) +
                        16.0 * g(y0 + 3 * h) - 3.0 * g(y0 + 4 * h)) /
                       (12.0 * h);
    const cplx dminus = (25.0 * g(y0) - 48.0 * g(y0 - h) + 36.0 * g(y0 - 2 * h) -
                         16.0 * g(y0 - 3 * h) + 3.0 * g(y0 - 4 * h)) /
                        (12.0 * h);
    return dplus - dminus;
  };
  CHECK(std::abs(jump(0.37, cplx(2.0, 0.5)) - 1.0) < 1e-6);
  CHECK(std::abs(jump(0.71, cplx(1.1, -0.2)) - 1.0) < 1e-6);

  // and the analytic derivative reproduces the same jump exactly
  const cplx dp = detail::green_dx(b, {0.37 + 1e-12, 0.37, cplx(2.0, 0.5)});
  const cplx dm = detail::green_dx(b, {0.37 - 1e-12, 0.37, cplx(2.0, 0.5)});
  CHECK(std::abs(dp - dm - 1.0) < 1e-9);
}

TEST_CASE("green: outgoing conditions at both ends") {
  const BarrierParams b;
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> ys(0.05, 0.95);
  for (int i = 0; i < 50; ++i) {
    const double y = ys(rng);
    const cplx p = rand_p(rng);
    const cplx g0 = green_closed(b, 0.0, y, p);
    const cplx gL = green_closed(b, b.L, y, p);
    const cplx d0 = detail::green_dx(b, {0.0, y, p});
    const cplx dL = detail::green_dx(b, {b.L, y, p});
    CHECK(std::abs(d0 + I1 * p * g0) <= 1e-8 * std::abs(p * g0));
    CHECK(std::abs(dL - I1 * p * gL) <= 1e-8 * std::abs(p * gL));
  }
}

TEST_CASE("green: edge rows collapse to two-exponential forms") {
  const BarrierParams b;
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> xs(0.0, b.L);
  for (int i = 0; i < 20; ++i) {
    const double x = xs(rng);
    const cplx p = rand_p(rng);
    const MomentumFrame f(b, p);
    const cplx D = denominator_D(b, p);
    const cplx row0 = I1 *
                      (f.pl * std::exp(-I1 * f.pp * (b.L - x)) -
                       f.om * std::exp(I1 * f.pp * (b.L - x))) /
                      D;
    const cplx g = green_closed(b, 0.0, x, p);
    CHECK(std::abs(g - row0) <= 1e-12 * (std::abs(g) + 1e-3));
    const cplx corner = 2.0 * I1 * f.pp / D;
    CHECK(std::abs(green_closed(b, 0.0, b.L, p) - corner) <=
          1e-12 * std::abs(corner));
  }
}

TEST_CASE("green: momentum derivative at zero matches the closed form") {
  const BarrierParams b;
  const auto d = cauchy_derivs(
      [&](cplx p) { return green_closed(b, 0.0, 0.0, p); }, cplx(0.0), 1);
  CHECK(std::abs(d[0] - green_closed(b, 0.0, 0.0, cplx(0.0))) < 1e-12);
  CHECK(std::abs(d[1] - cplx(0.0, -0.10143856076818944)) < 1e-12);
}

TEST_CASE("green: resolvent decay and corner growth") {
  const BarrierParams b;
  // |p G| pinned near 1/2 on the real ray; on the arg -pi/8 ray the
  // diagonal stays pinned while off-diagonal rows only decay further
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{
           {0.45, 0.45}, {0.3, 0.7}}) {
    double lo = 1e300, hi = 0.0;
    for (int j = 0; j <= 8; ++j) {
      const double ap = std::pow(10.0, 2.0 + 0.25 * j);
      const double v = std::abs(ap * green_closed(b, x, y, cplx(ap)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi / lo <= 3.0);
    CHECK(hi <= 1.5);
  }
  double hi_diag = 0.0, lo_diag = 1e300, hi_off = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const double ap = std::pow(10.0, 2.0 + 0.25 * j);
    const cplx p = ap * std::exp(cplx(0.0, -PI / 8.0));
    const double vd = std::abs(p * green_closed(b, 0.45, 0.45, p));
    hi_diag = std::max(hi_diag, vd);
    lo_diag = std::min(lo_diag, vd);
    hi_off = std::max(hi_off, std::abs(p * green_closed(b, 0.3, 0.7, p)));
  }
  CHECK(hi_diag / lo_diag <= 3.0);
  CHECK(hi_off <= 1.5);

  // exceptional corner grows linearly down the imaginary axis
  const double g10 = std::abs(green_closed(b, 0.0, 0.0, cplx(0.0, -10.0)));
  const double g1000 = std::abs(green_closed(b, 0.0, 0.0, cplx(0.0, -1000.0)));
  CHECK(g1000 / g10 > 100.0 / 1.5);
  CHECK(g1000 / g10 < 100.0 * 1.5);
}

TEST_CASE("green: pole proximity raises, near misses do not") {
  const BarrierParams b;
  const auto res = find_resonances(b, 1);
  CHECK_THROWS_AS((void)green_closed(b, 0.3, 0.7, res[0].p),
                  PoleProximityError);
  CHECK_NOTHROW((void)green_closed(b, 0.3, 0.7, res[0].p + cplx(1e-5)));
}

TEST_CASE("pole series: convergence, residues, endpoint refusal") {
  const BarrierParams b;
  const auto pairs = make_pole_pairs(b, 1000);
  const GreenQuery q{0.3, 0.7, cplx(2.0)};
  const cplx exact = green_closed(b, q);

  const double e125 = std::abs(green_pole_series(b, q, pairs, 125) - exact);
  const double e250 = std::abs(green_pole_series(b, q, pairs, 250) - exact);
  const double e500 = std::abs(green_pole_series(b, q, pairs, 500) - exact);
  const double e1000 = std::abs(green_pole_series(b, q, pairs, 1000) - exact);
  CHECK(e500 / std::abs(exact) <= 1e-3);
  CHECK(e500 / std::abs(exact) <= 1e-5);  // measured 2.75e-6
  CHECK(e1000 < e500);
  CHECK(e250 <= e125);
  CHECK(e500 <= e250);

  // residue at p_n from three-point quadratic approach extrapolation
  const auto res = find_resonances(b, 3);
  for (int n = 0; n < 3; ++n) {
    const cplx dir = std::exp(cplx(0.0, 0.3));
    cplx r[3];
    double dd = 1e-2;
    for (int j = 0; j < 3; ++j, dd *= 0.5) {
      const cplx p = res[n].p + dd * dir;
      r[j] = (p - res[n].p) * green_closed(b, 0.3, 0.7, p);
    }
    const cplx extrap = (8.0 * r[2] - 6.0 * r[1] + r[0]) / 3.0;
    const cplx ref = pairs.pos.u(n, 0.3) * pairs.pos.u(n, 0.7) / pairs.pos.N[n];
    CHECK(std::abs(extrap - ref) <= 1e-6 * std::abs(ref));
  }

  CHECK_THROWS_AS(
      (void)green_pole_series(b, {0.0, 0.0, cplx(2.0)}, pairs, 100),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)green_pole_series(b, {b.L, b.L, cplx(2.0)}, pairs, 100),
      std::domain_error);
}

TEST_CASE("subtracted series: corner convergence and interior identity") {
  const BarrierParams b;
  const auto pairs = make_pole_pairs(b, 1000);
  const GreenQuery q00{0.0, 0.0, cplx(1.5)};
  const cplx exact = green_closed(b, q00);
  const double e500 =
      std::abs(green_subtracted_series(b, q00, pairs, 500) - exact);
  const double e1000 =
      std::abs(green_subtracted_series(b, q00, pairs, 1000) - exact);
  CHECK(e500 / std::abs(exact) <= 1e-3);
  CHECK(e500 / std::abs(exact) >= 2e-4);  // measured 2.88e-4
  CHECK(e500 / std::abs(exact) <= 4e-4);
  CHECK(e1000 < e500);

  const GreenQuery qi{0.3, 0.7, cplx(2.0)};
  const cplx sub = green_subtracted_series(b, qi, pairs, 500);
  const cplx plain = green_pole_series(b, qi, pairs, 500);
  CHECK(std::abs(sub - plain) <= 1e-6);

  CHECK_THROWS_AS(
      (void)green_subtracted_series(b, {0.0, 0.0, cplx(0.0)}, pairs, 100),
      std::invalid_argument);
}

TEST_CASE("scattering extraction: free limit and mirror symmetry") {
  const BarrierParams b;
  BarrierParams b0 = b;
  b0.V = 1e-12;
  const double p = 3.0, x = 0.5;
  const cplx free_ref = std::sqrt(b.m / p) / std::sqrt(2.0 * PI) *
                        std::exp(I1 * p * x);
  CHECK(std::abs(scattering_from_green(b0, x, p, ScatteringKind::in_r) -
                 free_ref) <= 1e-9 * std::abs(free_ref));

  for (const double xx : {0.2, 0.5, 0.8}) {
    const double a =
        std::abs(scattering_from_green(b, xx, p, ScatteringKind::in_l));
    const double c =
        std::abs(scattering_from_green(b, b.L - xx, p, ScatteringKind::in_r));
    CHECK(std::abs(a - c) <= 1e-12);
  }

  CHECK_THROWS_AS(
      (void)scattering_from_green(b, 0.5, -1.0, ScatteringKind::in_r),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)scattering_from_green(b, 0.5, 3.0, ScatteringKind::out_r),
      std::invalid_argument);
}

TEST_CASE("plane-wave overlap of a Green row: frozen values and seam") {
  const BarrierParams b;
  CHECK(std::abs(green_planewave_integral(b, 0.5, cplx(1.3, 0.4), 3.0) -
                 cplx(0.011214260463438937, -0.075891069481427612)) < 1e-13);
  CHECK(std::abs(green_planewave_integral(b, 1.0, cplx(2.2, -0.3), 3.0) -
                 cplx(0.10507504620113571, -0.036802146587749662)) < 1e-13);
  CHECK(std::abs(green_planewave_integral(b, 0.25, cplx(0.7), -3.0) -
                 cplx(-0.0469160921238337, 0.061477105186479447)) < 1e-13);
  // p'(Q) ~ 0: the circle-mean path
  CHECK(std::abs(green_planewave_integral(b, 0.5, cplx(b.kappa() + 1e-5), 3.0) -
                 cplx(0.097579280518292164, -0.11043014826077402)) < 1e-10);
}
