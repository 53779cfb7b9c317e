#include <cmath>
#include <gtest/gtest.h>

#include "selberg/errors.hpp"
#include "selberg/group.hpp"
#include "selberg/heat.hpp"
#include "selberg/quadrature.hpp"
#include "selberg/spectrum.hpp"

using namespace selberg;

namespace {

// 50-digit reference values, truncated to double precision
constexpr double kKernelAtOne = 0.057535755205721974618886301546601513604;
const struct {
    double t, value;
} kKernelGrid[] = {
    {2.5, 0.0144711173121612525709966332722},
    {3.0, 0.0103725476329466696539753050041},
    {5.0, 0.00345247250804398711475096727021},
    {10.0, 0.000418936963722591877807271190582},
    {25.0, 0.0000029230145447219648768464031912},
    {50.0, 0.00000000214085048581867156146462415923},
};

LengthSpectrum synthetic_two_line_spectrum() {
    LengthSpectrum s;
    s.entries = {{0.9, 2}, {1.7, 3}};
    s.cutoff = 2.0;
    s.word_depth = 8;
    s.genus = 2;
    s.stabilized = true;
    return s;
}

}  // namespace

TEST(HeatKernel, MatchesPinnedOracleAtOne) {
    double k = heat_kernel_h(1.0, 0.0);
    EXPECT_NEAR(k / kKernelAtOne, 1.0, 1e-10);
}

TEST(HeatKernel, MatchesPinnedGridAtZeroDistance) {
    for (const auto& row : kKernelGrid) {
        double k = heat_kernel_h(row.t, 0.0);
        EXPECT_NEAR(k / row.value, 1.0, 1e-11) << "t=" << row.t;
    }
}

TEST(HeatKernel, FarDistanceUnderflowsCleanly) {
    double k = heat_kernel_h(1.0, 50.0);
    EXPECT_GE(k, 0.0);
    EXPECT_LE(k, 1e-15);
}

TEST(HeatKernel, DecreasesInDistance) {
    double prev = heat_kernel_h(1.0, 0.0);
    for (double rho = 0.5; rho <= 5.0; rho += 0.5) {
        double k = heat_kernel_h(1.0, rho);
        EXPECT_LT(k, prev) << "rho=" << rho;
        EXPECT_GT(k, 0.0);
        prev = k;
    }
}

TEST(HeatKernel, RejectsBadArguments) {
    EXPECT_THROW(heat_kernel_h(0.0, 0.0), validation_error);
    EXPECT_THROW(heat_kernel_h(-1.0, 0.0), validation_error);
    EXPECT_THROW(heat_kernel_h(1.0, -0.1), validation_error);
}

TEST(Quadrature, KnownIntegrals) {
    QuadratureResult r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                            M_PI, 1e-12, 1e-12);
    EXPECT_NEAR(r.value, 2.0, 1e-11);
    // inverse square root at the left endpoint; nodes stay interior so the
    // singularity is never evaluated and bisection localizes it
    QuadratureResult s = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); },
                                            0.0, 1.0, 1e-9, 1e-9);
    EXPECT_NEAR(s.value, 2.0, 1e-7);
}

TEST(Quadrature, HalvingAgreement) {
    // splitting the domain by hand must agree with the adaptive result
    auto f = [](double x) { return std::exp(-x * x / 4.0) * x; };
    double whole = integrate_adaptive(f, 0.0, 6.0, 1e-12, 1e-12).value;
    double split = integrate_adaptive(f, 0.0, 3.0, 1e-12, 1e-12).value +
                   integrate_adaptive(f, 3.0, 6.0, 1e-12, 1e-12).value;
    EXPECT_NEAR(whole, split, 1e-11);
}

TEST(HeatTrace, MatchesDirectDoubleSumOnSyntheticSpectrum) {
    LengthSpectrum s = synthetic_two_line_spectrum();
    for (double t : {0.5, 1.0, 3.0}) {
        const int cap = 40;
        HeatTraceSample h = heat_trace(s, t, cap);
        double pre = std::exp(-t / 4.0) / (2.0 * std::sqrt(4.0 * M_PI * t));
        double direct = 0.0;
        for (const auto& e : s.entries) {
            for (int n = 1; n <= cap; ++n) {
                double nl = n * e.length;
                direct += e.multiplicity * e.length * std::exp(-nl * nl / (4.0 * t)) /
                          std::sinh(nl / 2.0);
            }
        }
        direct *= pre;
        EXPECT_NEAR(h.value, direct, 1e-12 * std::max(1.0, std::abs(direct)))
            << "t=" << t;
        EXPECT_GE(h.tail_bound, 0.0);
    }
}

TEST(HeatTrace, PowerTailBoundIsHonest) {
    LengthSpectrum s = synthetic_two_line_spectrum();
    // truncating powers early changes the value by less than the quoted tail
    HeatTraceSample coarse = heat_trace(s, 2.0, 5);
    HeatTraceSample fine = heat_trace(s, 2.0, 200);
    EXPECT_LE(std::abs(fine.value - coarse.value), coarse.tail_bound);
}

TEST(HeatTrace, OctagonPositiveAndTailAware) {
    GroupPresentation g = builtin_octagon();
    EnumerationOptions opts;
    opts.threads = 4;
    LengthSpectrum s = enumerate_spectrum(g, 7.0, 8, opts);
    ASSERT_TRUE(s.stabilized);
    for (double t : {2.5, 3.0, 5.0}) {
        HeatTraceSample h = heat_trace(s, t, default_power_cap(s, t));
        EXPECT_GT(h.value, 0.0) << "t=" << t;
        EXPECT_TRUE(std::isfinite(h.value));
    }
}

TEST(HeatTrace, RejectsUnusableSpectra) {
    LengthSpectrum s = synthetic_two_line_spectrum();
    s.stabilized = false;
    EXPECT_THROW(heat_trace(s, 1.0, 10), numerical_error);
    LengthSpectrum empty;
    empty.cutoff = 1.0;
    empty.stabilized = false;
    EXPECT_THROW(heat_trace(empty, 1.0, 10), numerical_error);
    EXPECT_THROW(default_power_cap(empty, 1.0), numerical_error);
}

TEST(LowerBound, DefinedAboveTwoOnly) {
    EXPECT_THROW(heat_trace_lower_bound(2, 2.0), validation_error);
    EXPECT_THROW(heat_trace_lower_bound(2, 1.0), validation_error);
    double prev = heat_trace_lower_bound(2, 2.5);
    EXPECT_LT(prev, 1.0);
    for (double t : {5.0, 10.0, 25.0, 50.0}) {
        double b = heat_trace_lower_bound(2, t);
        EXPECT_GT(b, prev);  // approaches 1 from below as the kernel decays
        EXPECT_LT(b, 1.0);
        prev = b;
    }
}

TEST(ThresholdTime, ExistsAndPersists) {
    double t2 = find_t0(2);
    EXPECT_GT(t2, 2.0);
    // the defining inequality holds at t0 and across the persistence window
    for (double dt : {0.0, 2.5, 5.0, 10.0}) {
        double t = t2 + dt;
        EXPECT_LE(heat_kernel_h(t, 0.0), std::exp(-t / 4.0) / (4.0 * M_PI) + 1e-12);
    }
}

TEST(ThresholdTime, NondecreasingInGenus) {
    double prev = 0.0;
    for (int g = 2; g <= 5; ++g) {
        double t = find_t0(g);
        EXPECT_GE(t, prev) << "g=" << g;
        prev = t;
    }
}

TEST(PeriodizedKernel, DominatesTheFreeKernelAndConverges) {
    GroupPresentation g = builtin_octagon();
    Point z{0.1, 1.0}, w{-0.2, 1.4};
    double tt = 2.0;
    PeriodizedSample d3 = periodized_kernel(g, tt, z, w, 3);
    PeriodizedSample d5 = periodized_kernel(g, tt, z, w, 5);
    // every orbit term is positive, so deeper sums grow...
    EXPECT_GE(d5.value, d3.value);
    // ...starting from the direct kernel term
    EXPECT_GE(d3.value, heat_kernel_h(tt, hyperbolic_distance(z, w)));
    // and the shell contributions fade
    EXPECT_LT(d5.last_shell, d3.last_shell + 1e-18);
}

TEST(PeriodizedKernel, SymmetricInArguments) {
    GroupPresentation g = builtin_octagon();
    Point z{0.3, 0.8}, w{0.0, 1.0};
    double a = periodized_kernel(g, 1.5, z, w, 4).value;
    double b = periodized_kernel(g, 1.5, w, z, 4).value;
    EXPECT_NEAR(a, b, 1e-12 * std::max(a, b));
}
