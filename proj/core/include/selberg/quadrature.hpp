#pragma once

#include <cstddef>
#include <functional>

namespace selberg {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval. Bisects until the local
// Kronrod-Gauss discrepancy meets the tolerance split across subintervals;
// throws numerical_error if the interval budget runs out before that happens.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol = 1e-12,
                                    double rel_tol = 1e-9);

}  // namespace selberg
