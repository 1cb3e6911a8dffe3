#pragma once

#include <utility>
#include <vector>

#include "gamow/types.hpp"

namespace gamow {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz), entire. Upper half plane by
// region-split evaluation (Maclaurin series, Weideman rational fit,
// continued fraction); lower half via w(z) = 2 e^{-z^2} - w(-z), which can
// overflow when Re(-z^2) is large; the flagged overload reports that.
cplx faddeeva_w(cplx z);
cplx faddeeva_w(cplx z, bool& overflow);

// e^{y^2} erfc(y) = w(iy). The reflected branch (arg y near the negative-
// real side) contains a 2 e^{y^2} term; reflection_large flags when that
// term dominates and grows exponentially, overflow when it exceeds range.
cplx scaled_erfc(cplx y);
cplx scaled_erfc(cplx y, bool& reflection_large, bool& overflow);

// Moshinsky kernel M(x,q,t;m) = 1/2 e^{imx^2/2t} w(i e^{-i pi/4}
// sqrt(m/2t) (x - tq/m)). Throws std::domain_error for t <= 0.
cplx moshinsky(double x, cplx q, double t, double m);

// phi1(w) = (e^w - 1)/w with a short series near w = 0.
cplx phi1(cplx w);

// sin(a u)/a continued analytically in a (series near a = 0), used by the
// small-|p'| branch of the Green function.
cplx sinc_scaled(cplx a, double u);

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

}  // namespace gamow
