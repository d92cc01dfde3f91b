#pragma once

namespace circfuse {

/// Modified Bessel function of the first kind, I_n(x), for n in {0, 1}.
///
/// Power series below x = 15, Hankel asymptotic expansion above. Relative
/// error is below 1e-7 everywhere on [0, inf) (in practice ~1e-14).
/// Throws DomainError for negative or non-finite x or an unsupported order.
double bessel_i(int order, double x);

/// Exponentially scaled variant e^{-x} I_n(x); finite for all x >= 0.
double bessel_i_scaled(int order, double x);

/// I_1(x) / I_0(x): mean resultant length of a von Mises with concentration x.
double bessel_i1_i0_ratio(double x);

}  // namespace circfuse
