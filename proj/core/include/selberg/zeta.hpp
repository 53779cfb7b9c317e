#pragma once

#include "selberg/extended_log.hpp"
#include "selberg/spectrum.hpp"

namespace selberg {

struct ZetaEvaluation {
    double s = 0.0;
    double log_value = 0.0;
    int k_terms = 0;           // vertical product truncated at k = k_terms
    double spectrum_cutoff = 0.0;
    ExtendedLog tail_log_bound;  // log of (k-tail + primitive-tail) mass
};

// log Z(s) = sum_gamma sum_{k=0}^{k_max} log(1 - e^{-(s+k) l(gamma)}) over the
// oriented primitive spectrum, compensated summation in fixed (length, k)
// order. tail_log_bound collects the dropped k-tail (geometric) and the
// primitives above the cutoff (counting-envelope integral, finite only for
// s clearly above 1).
ZetaEvaluation selberg_zeta_log(const LengthSpectrum& spec, double s, int k_max);

// termwise derivative: Z'/Z(s) = sum l e^{-(s+k) l} / (1 - e^{-(s+k) l}) > 0
double zeta_log_derivative_product(const LengthSpectrum& spec, double s, int k_max);

// Z'/Z(s) = (2s-1) integral_0^inf HTr(t) e^{-s(s-1)t} dt. Independent of the
// product route; s >= 2 is the intended range, any s > 1 is accepted.
double zeta_log_derivative_mckean(const LengthSpectrum& spec, double s,
                                  double abs_tol = 1e-10, double rel_tol = 1e-8);

// log Z(n) - log Z(2), computed both as a difference of selberg_zeta_log
// values and as the quadrature of Z'/Z over [2, n]; returns the difference
// form after checking the two agree to 1e-6.
double zeta_ratio_log(const LengthSpectrum& spec, int n);

// Z'(1) by Richardson extrapolation of Z(1+h)/h from h = 0.1, 0.05, 0.025.
// Experimental: the error is not controlled, the product barely converges
// this close to s = 1.
double zeta_derivative_at_one_experimental(const LengthSpectrum& spec);

}  // namespace selberg
