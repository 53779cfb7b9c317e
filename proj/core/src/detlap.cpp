#include "selberg/detlap.hpp"

#include <cmath>

#include "selberg/errors.hpp"

namespace selberg {

double log_barnes_g_int(int m) {
    if (m < 1) throw validation_error("log_barnes_g_int: m must be >= 1");
    double sum = 0.0;
    for (int j = 1; j <= m - 2; ++j) sum += std::lgamma(j + 1.0);
    return sum;
}

double glaisher_log_a() {
    // sum_{k<=n} k log k = (n^2/2 + n/2 + 1/12) log n - n^2/4 + log A + 1/(720 n^2)
    //                      - 1/(5040 n^4) + O(n^-6), rearranged for log A.
    // Small n beats large here: the rearrangement cancels terms of size n^2/4, so
    // rounding grows with n while the omitted O(n^-6) tail shrinks like 1e-4/n^6.
    // n = 100 balances the two at ~1e-15 observed error in long double.
    static const double value = [] {
        const long double n = 100.0L;
        long double sum = 0.0L, carry = 0.0L;
        for (long double k = 1.0L; k <= n; k += 1.0L) {
            long double term = k * std::log(k) - carry;
            long double t = sum + term;
            carry = (t - sum) - term;
            sum = t;
        }
        long double log_a = sum - (n * n / 2.0L + n / 2.0L + 1.0L / 12.0L) * std::log(n) +
                            n * n / 4.0L - 1.0L / (720.0L * n * n) +
                            1.0L / (5040.0L * n * n * n * n);
        return static_cast<double>(log_a);
    }();
    return value;
}

double zeta_prime_minus_one() { return 1.0 / 12.0 - glaisher_log_a(); }

double c_n_constant(int n) {
    if (n < 1) throw validation_error("c_n_constant: n must be >= 1");
    const double m = 2.0 * n - 1.0;
    return log_barnes_g_int(2 * n - 1) / (2.0 * M_PI) -
           (2.0 * n - 3.0) / (4.0 * M_PI) * std::lgamma(m) + m * m / (8.0 * M_PI) -
           m * std::log(2.0 * M_PI) / (8.0 * M_PI) - zeta_prime_minus_one() / M_PI;
}

SpectralConstants spectral_constants(int g, int n) {
    if (g < 2) throw validation_error("spectral_constants: genus must be >= 2");
    SpectralConstants k;
    k.g = g;
    k.n = n;
    k.c_n = c_n_constant(n);
    k.vol = 4.0 * M_PI * (g - 1);
    k.log_c_gn = -k.c_n * k.vol;
    return k;
}

double log_det_laplacian(int g, int n, const ZetaEvaluation& zeta) {
    if (n < 2) {
        throw validation_error("log_det_laplacian: n >= 2 required; use the weight-one variant");
    }
    if (zeta.s != static_cast<double>(n)) {
        throw validation_error("log_det_laplacian: zeta evaluation is at a different s than n");
    }
    SpectralConstants k = spectral_constants(g, n);
    return k.log_c_gn + zeta.log_value + 2.0 * (n + 1.0 / 3.0) * (g - 1) * std::log(2.0);
}

double log_det_laplacian_weight_one(int g, double z_prime_one,
                                    bool acknowledge_experimental) {
    if (!acknowledge_experimental) {
        throw validation_error(
            "log_det_laplacian_weight_one: pass acknowledge_experimental=true; "
            "the Z'(1) input has uncontrolled error");
    }
    if (!(z_prime_one > 0.0)) {
        throw validation_error("log_det_laplacian_weight_one: Z'(1) estimate must be > 0");
    }
    SpectralConstants k = spectral_constants(g, 1);
    return k.log_c_gn + std::log(z_prime_one) +
           (2.0 * (g - 1) / 3.0 + 2.0) * std::log(2.0);
}

}  // namespace selberg
