#pragma once

#include "selberg/zeta.hpp"

namespace selberg {

// constants entering the regularized determinant of the weight-n Laplacian
struct SpectralConstants {
    int g = 2;
    int n = 2;
    double c_n = 0.0;
    double log_c_gn = 0.0;  // log C_{g,n} = -c_n * vol
    double vol = 0.0;       // hyperbolic volume 4 pi (g-1)
};

// log G(m) for the Barnes G-function at integers: sum_{j=1}^{m-2} log j!
double log_barnes_g_int(int m);

// Glaisher-Kinkelin constant, log A, by Euler-Maclaurin; cached.
double glaisher_log_a();

// zeta'(-1) = 1/12 - log A; cached.
double zeta_prime_minus_one();

// c_n = log G(2n-1)/2pi - (2n-3)/(4pi) log Gamma(2n-1) + (2n-1)^2/(8pi)
//       - (2n-1) log(2pi)/(8pi) - zeta'(-1)/pi
double c_n_constant(int n);

SpectralConstants spectral_constants(int g, int n);

// log det* = log C_{g,n} + log Z(n) + 2(n + 1/3)(g-1) log 2, n >= 2;
// zeta.s must equal n.
double log_det_laplacian(int g, int n, const ZetaEvaluation& zeta);

// weight-one branch from a Z'(1) estimate:
// log C_{g,1} + log Z'(1) + (2(g-1)/3 + 2) log 2.
// The Z'(1) input has uncontrolled error, so the caller must acknowledge.
double log_det_laplacian_weight_one(int g, double z_prime_one,
                                    bool acknowledge_experimental);

}  // namespace selberg
