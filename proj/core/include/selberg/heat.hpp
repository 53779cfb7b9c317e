#pragma once

#include "selberg/group.hpp"
#include "selberg/spectrum.hpp"

namespace selberg {

struct HeatTraceSample {
    double t = 0.0;
    double value = 0.0;       // geodesic part of the heat trace
    double tail_bound = 0.0;  // dropped powers + primitives beyond the cutoff
};

struct PeriodizedSample {
    double value = 0.0;
    double last_shell = 0.0;  // contribution of the deepest word shell
};

// Heat kernel on the hyperbolic plane at time t and distance rho,
//   K(t; rho) = (sqrt(2) e^{-t/4} / (4 pi t)^{3/2})
//               * integral_rho^inf s e^{-s^2/4t} / sqrt(cosh s - cosh rho) ds.
// The substitution s = rho + sigma^2 removes the inverse-square-root endpoint;
// accuracy 1e-12 absolute or 1e-9 relative, whichever is looser.
double heat_kernel_h(double t, double rho);

// Geodesic side of the trace formula,
//   (e^{-t/4} / (2 sqrt(4 pi t))) sum_gamma sum_{n>=1}
//       l(gamma) e^{-(n l)^2 / 4t} / sinh(n l / 2),
// over the oriented primitive entries of spec, powers capped at power_cap.
// tail_bound covers both the dropped powers (geometric majorant) and all
// primitives above spec.cutoff (counting-envelope integral).
HeatTraceSample heat_trace(const LengthSpectrum& spec, double t, int power_cap);

// power cap large enough that the dropped-power tail is negligible at time t
int default_power_cap(const LengthSpectrum& spec, double t);

// 1 - 4 pi (g-1) K(t; 0); valid for t > 2 only.
double heat_trace_lower_bound(int genus, double t);

// Smallest t > 2 with K(t; 0) <= e^{-t/4} / (4 pi (g-1)), persisting on
// [t, t+10]; bisected to 1e-6. Fails if no such t exists below 1e4.
double find_t0(int genus);

// sum over group elements of word length <= max_depth of K(t; d(z, gamma w))
PeriodizedSample periodized_kernel(const GroupPresentation& g, double t, Point z,
                                   Point w, int max_depth);

}  // namespace selberg
