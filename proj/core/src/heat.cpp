#include "selberg/heat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "selberg/errors.hpp"
#include "selberg/quadrature.hpp"

namespace selberg {

namespace {

// Kahan-compensated accumulator for fixed-order sums
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

// integral_C^inf u e^{-u^2/4t + a u} du, by completing the square
double gaussian_moment_tail(double c, double a, double t) {
    double shift = c - 2.0 * a * t;
    return std::exp(a * a * t) *
           (2.0 * t * std::exp(-shift * shift / (4.0 * t)) +
            2.0 * a * t * std::sqrt(M_PI * t) * std::erfc(shift / (2.0 * std::sqrt(t))));
}

}  // namespace

double heat_kernel_h(double t, double rho) {
    if (!(t > 0.0)) throw validation_error("heat_kernel_h: t must be > 0");
    if (!(rho >= 0.0)) throw validation_error("heat_kernel_h: rho must be >= 0");

    // s = rho + sigma^2; cosh s - cosh rho = 2 sinh((s+rho)/2) sinh(sigma^2/2)
    // keeps the difference stable near the endpoint and the integrand analytic
    auto integrand = [t, rho](double sigma) {
        double s = rho + sigma * sigma;
        double gap = 2.0 * std::sinh(0.5 * (s + rho)) * std::sinh(0.5 * sigma * sigma);
        double num = 2.0 * sigma * s * std::exp(-s * s / (4.0 * t));
        return num / std::sqrt(gap);
    };
    // e^{-s^2/4t} <= e^{-rho^2/4t} e^{-x^2/4t} for s = rho + x, so the mass
    // beyond x = sqrt(640 t) is below e^{-160} relative
    double sigma_max = std::pow(640.0 * t, 0.25) + 2.0;
    // keep sinh((s+rho)/2) inside double range; beyond this the integrand has
    // underflowed to zero anyway
    if (rho + sigma_max * sigma_max > 1380.0 && sigma_max * sigma_max > 1.0) {
        double room = 1380.0 - rho;
        if (room <= 0.0) return 0.0;
        sigma_max = std::min(sigma_max, std::sqrt(room));
    }
    QuadratureResult q = integrate_adaptive(integrand, 0.0, sigma_max, 1e-12, 1e-9);
    double pre = std::sqrt(2.0) * std::exp(-t / 4.0) / std::pow(4.0 * M_PI * t, 1.5);
    return pre * q.value;
}

HeatTraceSample heat_trace(const LengthSpectrum& spec, double t, int power_cap) {
    if (!spec.stabilized) {
        throw numerical_error("heat_trace: spectrum is not stabilized; deepen the search");
    }
    if (spec.entries.empty()) throw numerical_error("heat_trace: empty spectrum");
    if (!(t > 0.0)) throw validation_error("heat_trace: t must be > 0");
    if (power_cap < 1) throw validation_error("heat_trace: power_cap must be >= 1");

    const double pre = std::exp(-t / 4.0) / (2.0 * std::sqrt(4.0 * M_PI * t));
    Compensated acc;
    Compensated power_tail;
    for (const SpectrumEntry& e : spec.entries) {
        const double l = e.length;
        const double m = static_cast<double>(e.multiplicity);
        for (int n = 1; n <= power_cap; ++n) {
            double nl = n * l;
            acc.add(m * l * std::exp(-nl * nl / (4.0 * t)) / std::sinh(nl / 2.0));
        }
        // geometric majorant for the dropped powers: successive term ratios
        // are below q = e^{-(2N+3) l^2 / 4t}
        double nl = (power_cap + 1) * l;
        double first_dropped = l * std::exp(-nl * nl / (4.0 * t)) / std::sinh(nl / 2.0);
        double q = std::exp(-(2.0 * power_cap + 3.0) * l * l / (4.0 * t));
        power_tail.add(m * first_dropped / (1.0 - q));
    }

    // primitives above the cutoff: the counting function up to u is bounded by
    // e^{80 pi (g-1)/l_X + u}, so their mass is at most
    //   B [ f(C) e^C + int_C^inf f(u) e^u du ],  B = e^{80 pi (g-1)/l_X},
    // with f(u) = pre * u e^{-u^2/4t} / sinh(u/2) <= pre * 2 u e^{-u^2/4t-u/2}
    //             / (1 - e^{-C});
    // dividing by 1 - e^{-3C^2/4t} also covers their higher powers
    const double c = spec.cutoff;
    const double l_min = spec.entries.front().length;
    double log_b = 80.0 * M_PI * (spec.genus - 1) / l_min;
    double prim_tail;
    if (log_b > 600.0) {
        prim_tail = INFINITY;
    } else {
        double b = std::exp(log_b);
        double f_c = pre * c * std::exp(-c * c / (4.0 * t)) / std::sinh(c / 2.0);
        double integral = pre * 2.0 / (1.0 - std::exp(-c)) * gaussian_moment_tail(c, 0.5, t);
        prim_tail = b * (f_c * std::exp(c) + integral) / (1.0 - std::exp(-3.0 * c * c / (4.0 * t)));
    }

    HeatTraceSample out;
    out.t = t;
    out.value = pre * acc.sum;
    out.tail_bound = pre * power_tail.sum + prim_tail;
    return out;
}

int default_power_cap(const LengthSpectrum& spec, double t) {
    if (spec.entries.empty()) throw numerical_error("default_power_cap: empty spectrum");
    double l_min = spec.entries.front().length;
    return std::max(50, static_cast<int>(std::ceil(8.0 * std::sqrt(t) / l_min)));
}

double heat_trace_lower_bound(int genus, double t) {
    if (genus < 2) throw validation_error("heat_trace_lower_bound: genus must be >= 2");
    if (!(t > 2.0)) {
        throw validation_error("heat_trace_lower_bound: valid for t > 2 only");
    }
    return 1.0 - 4.0 * M_PI * (genus - 1) * heat_kernel_h(t, 0.0);
}

double find_t0(int genus) {
    if (genus < 2) throw validation_error("find_t0: genus must be >= 2");
    auto holds = [genus](double t) {
        return heat_kernel_h(t, 0.0) <= std::exp(-t / 4.0) / (4.0 * M_PI * (genus - 1));
    };
    auto persists = [&](double t) {
        for (double s = t; s <= t + 10.0; s += 0.25) {
            if (!holds(s)) return s;  // first failing sample
        }
        return -1.0;
    };

    const double step = 0.5;
    double lo = 2.0;
    for (double hi = 2.0 + step; hi < 1e4; hi += step) {
        if (!holds(hi)) {
            lo = hi;
            continue;
        }
        double a = lo, b = hi;
        while (b - a > 1e-6) {
            double mid = 0.5 * (a + b);
            if (mid > 2.0 && holds(mid)) {
                b = mid;
            } else {
                a = mid;
            }
        }
        double fail_at = persists(b);
        if (fail_at < 0.0) return std::max(b, 2.0 + 1e-9);
        lo = fail_at;
        hi = fail_at;  // resume scanning past the failure
    }
    throw numerical_error("find_t0: no threshold found below t = 1e4");
}

PeriodizedSample periodized_kernel(const GroupPresentation& g, double t, Point z,
                                   Point w, int max_depth) {
    if (!(t > 0.0)) throw validation_error("periodized_kernel: t must be > 0");
    if (max_depth < 0) throw validation_error("periodized_kernel: max_depth must be >= 0");
    const std::size_t n_letters = 2 * g.generators.size();
    std::uint64_t word_count = 1, shell = 1;
    for (int d = 1; d <= max_depth; ++d) {
        shell *= (d == 1 ? n_letters : n_letters - 1);
        word_count += shell;
        if (word_count > 2'000'000) {
            throw numerical_error("periodized_kernel: word budget exceeded");
        }
    }

    // deduplicate group elements across depths: canonical sign makes the
    // matrix entries a faithful key, quantized against roundoff
    auto key_of = [](const MoebiusElement& m) {
        const auto& e = m.entries();
        std::array<long long, 4> k{};
        for (int i = 0; i < 4; ++i) k[i] = std::llround(e[i] * 1e6);
        return k;
    };
    std::map<std::array<long long, 4>, char> seen;

    PeriodizedSample out;
    struct Item {
        MoebiusElement m;
        int last_letter;
    };
    std::vector<Item> frontier{{MoebiusElement::identity(), 0}};
    seen.emplace(key_of(frontier.front().m), 1);
    out.value = heat_kernel_h(t, hyperbolic_distance(z, frontier.front().m.apply(w)));
    out.last_shell = out.value;

    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<Item> next;
        double shell_sum = 0.0;
        for (const Item& it : frontier) {
            for (int l = 1; l <= static_cast<int>(g.generators.size()); ++l) {
                for (int sl : {l, -l}) {
                    if (depth > 1 && sl == -it.last_letter) continue;
                    MoebiusElement m = it.m * g.letter(sl);
                    if (!seen.emplace(key_of(m), 1).second) continue;
                    shell_sum += heat_kernel_h(t, hyperbolic_distance(z, m.apply(w)));
                    next.push_back({m, sl});
                }
            }
        }
        out.value += shell_sum;
        out.last_shell = shell_sum;
        frontier = std::move(next);
    }
    return out;
}

}  // namespace selberg
