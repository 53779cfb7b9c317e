#include "selberg/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "selberg/errors.hpp"
#include "selberg/heat.hpp"
#include "selberg/quadrature.hpp"

namespace selberg {

namespace {

struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void check_spectrum(const LengthSpectrum& spec, double s) {
    if (!(s > 1.0)) throw validation_error("selberg zeta: s must be > 1");
    if (!spec.stabilized) {
        throw numerical_error("selberg zeta: spectrum is not stabilized; deepen the search");
    }
    if (spec.entries.empty()) throw numerical_error("selberg zeta: empty spectrum");
}

double log1m_exp(double neg_exponent) {  // log(1 - e^{-x}) for x > 0
    return std::log1p(-std::exp(-neg_exponent));
}

// log of the mass of primitives above the cutoff: with pi(u) <= B e^u,
// B = e^{80 pi (g-1)/l_X}, and per-primitive mass below
// c e^{-s u}, c = 1/((1-e^{-C})(1-e^{-sC})), integration by parts gives
//   tail <= B c e^{-(s-1)C} (1 + s/(s-1)).
double log_primitive_tail(const LengthSpectrum& spec, double s) {
    if (s - 1.0 < 1e-8) {
        throw numerical_error("selberg zeta: counting-envelope tail bound diverges at s -> 1");
    }
    const double c = spec.cutoff;
    double log_b = 80.0 * M_PI * (spec.genus - 1) / spec.entries.front().length;
    double log_c = -std::log1p(-std::exp(-c)) - std::log1p(-std::exp(-s * c));
    return log_b + log_c - (s - 1.0) * c + std::log(1.0 + s / (s - 1.0));
}

double logsumexp2(double a, double b) {
    double hi = std::max(a, b), lo = std::min(a, b);
    if (hi == -INFINITY) return -INFINITY;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

ZetaEvaluation selberg_zeta_log(const LengthSpectrum& spec, double s, int k_max) {
    check_spectrum(spec, s);
    if (k_max < 1) throw validation_error("selberg zeta: k_max must be >= 1");

    Compensated acc;
    double log_k_tail = -INFINITY;
    for (const SpectrumEntry& e : spec.entries) {
        const double l = e.length;
        const double m = static_cast<double>(e.multiplicity);
        for (int k = 0; k <= k_max; ++k) {
            acc.add(m * log1m_exp((s + k) * l));
        }
        // |log(1-x)| <= x/(1-x); the dropped k-terms are geometric in e^{-l}
        double x0 = (s + k_max + 1.0) * l;
        double log_term = std::log(m) - x0 - std::log1p(-std::exp(-l)) -
                          std::log1p(-std::exp(-x0));
        log_k_tail = logsumexp2(log_k_tail, log_term);
    }

    ZetaEvaluation out;
    out.s = s;
    out.log_value = acc.sum;
    out.k_terms = k_max;
    out.spectrum_cutoff = spec.cutoff;
    double total_log_tail = logsumexp2(log_k_tail, log_primitive_tail(spec, s));
    out.tail_log_bound = ExtendedLog::finite(total_log_tail);
    return out;
}

double zeta_log_derivative_product(const LengthSpectrum& spec, double s, int k_max) {
    check_spectrum(spec, s);
    if (k_max < 1) throw validation_error("selberg zeta: k_max must be >= 1");
    Compensated acc;
    for (const SpectrumEntry& e : spec.entries) {
        const double l = e.length;
        const double m = static_cast<double>(e.multiplicity);
        for (int k = 0; k <= k_max; ++k) {
            double x = std::exp(-(s + k) * l);
            acc.add(m * l * x / (1.0 - x));
        }
    }
    return acc.sum;
}

double zeta_log_derivative_mckean(const LengthSpectrum& spec, double s,
                                  double abs_tol, double rel_tol) {
    if (!(s > 1.0)) throw validation_error("mckean route: s must be > 1");
    if (!spec.stabilized) {
        throw numerical_error("mckean route: spectrum is not stabilized");
    }
    if (spec.entries.empty()) throw numerical_error("mckean route: empty spectrum");

    // damping e^{-s(s-1)t}; upper limit T puts the integrand tail below 1e-12
    double rate = s * (s - 1.0) + 0.25;
    double upper = std::max(5.0, 64.0 / rate);
    auto integrand = [&spec, s](double t) {
        int cap = default_power_cap(spec, t);
        return heat_trace(spec, t, cap).value * std::exp(-s * (s - 1.0) * t);
    };
    QuadratureResult q = integrate_adaptive(integrand, 0.0, upper, abs_tol, rel_tol);
    return (2.0 * s - 1.0) * q.value;
}

double zeta_ratio_log(const LengthSpectrum& spec, int n) {
    if (n < 2) throw validation_error("zeta_ratio_log: n must be >= 2");
    const int k_max = 80;
    double diff = selberg_zeta_log(spec, static_cast<double>(n), k_max).log_value -
                  selberg_zeta_log(spec, 2.0, k_max).log_value;
    QuadratureResult q = integrate_adaptive(
        [&spec, k_max](double s) { return zeta_log_derivative_product(spec, s, k_max); },
        2.0, static_cast<double>(n), 1e-10, 1e-9);
    if (std::abs(diff - q.value) > 1e-6) {
        throw numerical_error("zeta_ratio_log: difference and integral routes disagree");
    }
    return diff;
}

double zeta_derivative_at_one_experimental(const LengthSpectrum& spec) {
    const int k_max = 200;
    auto estimate = [&](double h) {
        return std::exp(selberg_zeta_log(spec, 1.0 + h, k_max).log_value) / h;
    };
    // Z(1+h) = Z'(1) h + O(h^2); two Richardson steps on h, h/2, h/4
    double e1 = estimate(0.1), e2 = estimate(0.05), e3 = estimate(0.025);
    double r1 = 2.0 * e2 - e1;
    double r2 = 2.0 * e3 - e2;
    return (4.0 * r2 - r1) / 3.0;
}

}  // namespace selberg
