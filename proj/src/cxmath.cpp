#include "gamow/cxmath.hpp"

#include <array>
#include <cmath>
#include <map>

namespace gamow {

namespace {

constexpr double SQRT_PI = 1.7724538509055160273;
constexpr double INV_GAMMA_3_2 = 1.0 / 0.8862269254527580;  // 1/Gamma(3/2)

// Maclaurin form w(z) = e^{-z^2} + i z sum_j (-z^2)^j / Gamma(j + 3/2),
// good to ~1e-14 relative for |z| <= 2 in the upper half plane.
cplx w_series(cplx z) {
  const cplx zz = -z * z;
  cplx term = INV_GAMMA_3_2;
  cplx s = term;
  for (int j = 0; j < 80; ++j) {
    term *= zz / (j + 1.5);
    s += term;
    if (std::abs(term) < 1e-18 * std::abs(s)) break;
  }
  return std::exp(zz) + cplx(0.0, 1.0) * z * s;
}

// Weideman rational approximation, N = 48 terms. Coefficients are the
// leading Fourier coefficients of the mapped Gaussian; computed once by
// direct DFT (192 samples, only 48 output bins, no FFT needed).
struct WeidemanTable {
  double Lw;
  std::array<double, 48> c;
  WeidemanTable() {
    constexpr int N = 48, M = 2 * N, M2 = 2 * M;
    Lw = std::sqrt(N / std::sqrt(2.0));
    std::array<double, M2> f{};
    f[0] = 0.0;
    for (int i = 0; i < M2 - 1; ++i) {
      const int kk = i - (M - 1);
      const double theta = kk * PI / M;
      const double tt = Lw * std::tan(0.5 * theta);
      f[i + 1] = std::exp(-tt * tt) * (Lw * Lw + tt * tt);
    }
    std::array<double, M2> g{};
    for (int i = 0; i < M2; ++i) g[i] = f[(i + M) % M2];
    for (int k = 1; k <= N; ++k) {
      double acc = 0.0;
      for (int n = 0; n < M2; ++n) acc += g[n] * std::cos(2.0 * PI * k * n / M2);
      c[k - 1] = acc / M2;
    }
  }
};

cplx w_weideman(cplx z) {
  static const WeidemanTable tab;
  const cplx den = tab.Lw - cplx(0.0, 1.0) * z;
  const cplx Z = (tab.Lw + cplx(0.0, 1.0) * z) / den;
  cplx p = 0.0;
  for (int j = 47; j >= 0; --j) p = p * Z + tab.c[j];
  return 2.0 * p / (den * den) + (1.0 / SQRT_PI) / den;
}

// Descending Laplace continued fraction, 16 levels; |z| >= 6 upper half.
cplx w_contfrac(cplx z) {
  cplx f = 0.0;
  for (int j = 16; j >= 1; --j) f = (0.5 * j) / (z - f);
  return cplx(0.0, 1.0) / SQRT_PI / (z - f);
}

cplx w_upper(cplx z) {
  const double az = std::abs(z);
  if (az <= 2.0) return w_series(z);
  if (az >= 6.0) return w_contfrac(z);
  return w_weideman(z);
}

}  // namespace

cplx faddeeva_w(cplx z, bool& overflow) {
  overflow = false;
  if (z.imag() >= 0.0) return w_upper(z);
  const cplx mz2 = -z * z;
  if (mz2.real() > 709.0) {
    overflow = true;
    return 2.0 * std::exp(mz2) - w_upper(-z);  // inf escape, flagged
  }
  return 2.0 * std::exp(mz2) - w_upper(-z);
}

cplx faddeeva_w(cplx z) {
  bool ov;
  return faddeeva_w(z, ov);
}

cplx scaled_erfc(cplx y, bool& reflection_large, bool& overflow) {
  reflection_large = false;
  overflow = false;
  const cplx iy = cplx(0.0, 1.0) * y;
  if (iy.imag() >= 0.0) return w_upper(iy);
  // reflection e^{y^2} erfc(y) = 2 e^{y^2} - e^{(-y)^2} erfc(-y)
  const cplx y2 = y * y;
  reflection_large = y2.real() > 1.0;
  overflow = y2.real() > 709.0;
  return 2.0 * std::exp(y2) - w_upper(-iy);
}

cplx scaled_erfc(cplx y) {
  bool rl, ov;
  return scaled_erfc(y, rl, ov);
}

cplx moshinsky(double x, cplx q, double t, double m) {
  if (!(t > 0.0)) throw std::domain_error("moshinsky: t must be positive");
  if (!(m > 0.0)) throw std::domain_error("moshinsky: m must be positive");
  const cplx e_m14(std::sqrt(0.5), -std::sqrt(0.5));  // e^{-i pi/4}
  const cplx arg =
      cplx(0.0, 1.0) * e_m14 * std::sqrt(m / (2.0 * t)) * (x - t * q / m);
  return 0.5 * std::exp(cplx(0.0, 1.0) * m * x * x / (2.0 * t)) *
         faddeeva_w(arg);
}

cplx phi1(cplx w) {
  if (std::abs(w) < 0.5) {
    // sum_{j>=0} w^j/(j+1)!; the naive (e^w-1)/w cancels for small |w|
    cplx s = 0.0, term = 1.0;
    for (int j = 1; j <= 30; ++j) {
      s += term;
      term *= w / double(j + 1);
      if (std::abs(term) < 1e-17 * std::abs(s)) break;
    }
    return s;
  }
  return (std::exp(w) - 1.0) / w;
}

cplx sinc_scaled(cplx a, double u) {
  const cplx au = a * u;
  if (std::abs(au) < 1e-3) {
    const cplx s = au * au;
    return u * (1.0 - s / 6.0 + s * s / 120.0);
  }
  return std::sin(au) / a;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: order >= 1");

  std::vector<std::pair<double, double>> nw(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
      }
      const double dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
    }
    const double dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nw[i] = {-x, w};
    nw[n - 1 - i] = {x, w};
  }
  return cache.emplace(n, std::move(nw)).first->second;
}

}  // namespace gamow
