#pragma once

#include <complex>

namespace qd::specfun {

using cplx = std::complex<double>;

// Switchover thresholds. Each pair of branches agrees to ~1e-13 at the
// boundary (checked in tests/test_specfun.cpp).
inline constexpr double kSincSeriesBelow = 1e-4;
inline constexpr double kFsSeriesBelow = 1e-1;
inline constexpr double kCinSeriesBelow = 1.0;
inline constexpr double kCothSeriesBelow = 0.5;
// E1: power series inside kE1SeriesRadius, and in the wedge around the cut
// (Re w < 0, |Im w| < min(kE1SeriesLeftImag, |Re w|), |w| < kE1SeriesLeftRadius)
// where the continued fraction crawls; continued fraction elsewhere. Worst
// relative error of the combination on |w| <= 150 is ~1e-14.
inline constexpr double kE1SeriesRadius = 2.0;
inline constexpr double kE1SeriesLeftRadius = 100.0;
inline constexpr double kE1SeriesLeftImag = 10.0;
inline constexpr double kLerchDirectLambdaMin = 1e-3;

double sinc(double x);

// FS1(z) = 3/2 [(z^2-1) sin z + z cos z]/z^3
// FS0(z) = -3/2 [(z^2-3) sin z + 3 z cos z]/z^3
double fs1(double z);
double fs0(double z);

// Si(z) and si(z) = Si(z) - pi/2 = -int_z^inf sin(t)/t dt
double Si(double z);
double si(double z);
// ci(z) = -int_z^inf cos(t)/t dt, z > 0
double ci(double z);
// Cin(z) = int_0^z (1 - cos t)/t dt, entire; defined here for real z (even)
double cin(double z);
// principal-value exponential integral, z != 0
double ei(double z);

// E1 on the principal branch, w off (-inf, 0]
cplx e1_complex(cplx w);
// e^w E1(w), same domain; finite where E1 itself would overflow
cplx expe1(cplx w);

// Phi1(z; lambda) = sum_{k>=1} e^{-k lambda} / (k + z)
cplx lerch_phi1(cplx z, double lambda);

// thermal occupation 1/(e^{w/T}-1), w > 0, T >= 0
double nbar(double w, double T);

// coth(x) - 1/x, smooth and odd
double coth_minus_inv(double x);

}  // namespace qd::specfun
