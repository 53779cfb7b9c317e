#include "selberg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

// 15-point Kronrod extension of 7-point Gauss (positive half, node 0 last)
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           std::size_t& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        double x = h * kXgk[i];
        double fsum = f(c - x) + f(c + x);
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    return Panel{a, b, resk * h, std::abs(resk - resg) * std::abs(h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, double rel_tol) {
    QuadratureResult out;
    if (a == b) return out;
    Panel whole = gk15(f, a, b, out.evaluations);

    std::vector<Panel> active{whole};
    double total = whole.value;
    double total_err = whole.error;
    const std::size_t max_panels = 20000;

    while (true) {
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        if (active.size() >= max_panels) {
            throw numerical_error("quadrature did not converge within panel budget");
        }
        auto worst = std::max_element(active.begin(), active.end(),
                                      [](const Panel& p, const Panel& q) {
                                          return p.error < q.error;
                                      });
        Panel p = *worst;
        double mid = 0.5 * (p.a + p.b);
        Panel left = gk15(f, p.a, mid, out.evaluations);
        Panel right = gk15(f, mid, p.b, out.evaluations);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        *worst = left;
        active.push_back(right);
    }
    out.value = total;
    out.error_estimate = total_err;
    return out;
}

}  // namespace selberg
