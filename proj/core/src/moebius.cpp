#include "selberg/moebius.hpp"

#include <cmath>

#include "selberg/errors.hpp"

namespace selberg {

void MoebiusElement::normalize() {
    double det = m_[0] * m_[3] - m_[1] * m_[2];
    if (!(det > 0.0)) {
        throw validation_error("MoebiusElement: determinant must be positive, got " +
                               std::to_string(det));
    }
    double s = std::sqrt(det);
    for (double& e : m_) e /= s;
    for (double e : m_) {
        if (std::abs(e) > kDetTol) {
            if (e < 0.0) {
                for (double& f : m_) f = -f;
            }
            break;
        }
    }
}

MoebiusElement::MoebiusElement(double a, double b, double c, double d) : m_{a, b, c, d} {
    normalize();
}

MoebiusElement MoebiusElement::from_unit_entries(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (std::abs(det - 1.0) > kLengthTol) {
        throw validation_error("from_unit_entries: determinant " + std::to_string(det) +
                               " is not 1 within tolerance");
    }
    MoebiusElement g;
    g.m_ = {a, b, c, d};
    for (double e : g.m_) {
        if (std::abs(e) > kDetTol) {
            if (e < 0.0) {
                for (double& f : g.m_) f = -f;
            }
            break;
        }
    }
    return g;
}

MoebiusElement MoebiusElement::axis_translation(double l) {
    return MoebiusElement(std::exp(l / 2), 0.0, 0.0, std::exp(-l / 2));
}

MoebiusElement MoebiusElement::rotation_about_i(double phi) {
    return MoebiusElement(std::cos(phi / 2), std::sin(phi / 2), -std::sin(phi / 2),
                          std::cos(phi / 2));
}

MoebiusElement MoebiusElement::inverse() const {
    return MoebiusElement(m_[3], -m_[1], -m_[2], m_[0]);
}

bool MoebiusElement::is_identity(double tol) const {
    return std::abs(m_[0] - 1.0) <= tol && std::abs(m_[1]) <= tol &&
           std::abs(m_[2]) <= tol && std::abs(m_[3] - 1.0) <= tol;
}

MoebiusElement operator*(const MoebiusElement& g, const MoebiusElement& h) {
    return MoebiusElement(g.m_[0] * h.m_[0] + g.m_[1] * h.m_[2],
                          g.m_[0] * h.m_[1] + g.m_[1] * h.m_[3],
                          g.m_[2] * h.m_[0] + g.m_[3] * h.m_[2],
                          g.m_[2] * h.m_[1] + g.m_[3] * h.m_[3]);
}

Point MoebiusElement::apply(const Point& z) const {
    if (!(z.y > 0.0)) throw validation_error("Moebius apply: point outside upper half-plane");
    // (az+b)(conj(cz+d)) / |cz+d|^2
    double cr = m_[2] * z.x + m_[3];
    double ci = m_[2] * z.y;
    double den = cr * cr + ci * ci;
    double ar = m_[0] * z.x + m_[1];
    double ai = m_[0] * z.y;
    return Point{(ar * cr + ai * ci) / den, (ai * cr - ar * ci) / den};
}

double MoebiusElement::psl_distance(const MoebiusElement& other) const {
    double dm = 0.0, dp = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        dm = std::max(dm, std::abs(m_[i] - other.m_[i]));
        dp = std::max(dp, std::abs(m_[i] + other.m_[i]));
    }
    return std::min(dm, dp);
}

double hyperbolic_distance(const Point& z, const Point& w) {
    if (!(z.y > 0.0) || !(w.y > 0.0)) {
        throw validation_error("hyperbolic_distance: points must have y > 0");
    }
    double dx = z.x - w.x;
    double dy = z.y - w.y;
    double q = (dx * dx + dy * dy) / (4.0 * z.y * w.y);
    // cosh d = 1 + 2q  =>  d = 2 asinh(sqrt(q)), stable for q near 0
    return 2.0 * std::asinh(std::sqrt(q));
}

IsometryClass classify(const MoebiusElement& g) {
    double at = std::abs(g.trace());
    if (at > 2.0 + kDetTol) {
        return IsometryClass{IsometryKind::hyperbolic, 2.0 * std::acosh(at / 2.0)};
    }
    if (at >= 2.0 - kDetTol) {
        // canonical sign folds -Id onto +Id, so one identity check covers PSL
        if (g.is_identity()) return IsometryClass{IsometryKind::identity, 0.0};
        return IsometryClass{IsometryKind::parabolic, 0.0};
    }
    return IsometryClass{IsometryKind::elliptic, 0.0};
}

double translation_length_power(const MoebiusElement& g, int m) {
    if (m < 1) throw validation_error("translation_length_power: m must be >= 1");
    if (classify(g).kind != IsometryKind::hyperbolic) {
        throw validation_error("translation_length_power: element is not hyperbolic");
    }
    // Form the power on raw entries in wide precision. The double-precision
    // element product renormalizes the determinant each step, and that
    // recomputation cancels at the scale of the squared entries, which grows
    // like e^{m l}; by m = 8 it costs most of the mantissa. Widening the
    // intermediates keeps the trace good to ~1e-13 even for long elements.
    long double p[4] = {1.0L, 0.0L, 0.0L, 1.0L};
    const long double e[4] = {g.a(), g.b(), g.c(), g.d()};
    for (int i = 0; i < m; ++i) {
        long double q[4] = {p[0] * e[0] + p[1] * e[2], p[0] * e[1] + p[1] * e[3],
                            p[2] * e[0] + p[3] * e[2], p[2] * e[1] + p[3] * e[3]};
        for (int j = 0; j < 4; ++j) p[j] = q[j];
    }
    long double at = std::abs(p[0] + p[3]);
    if (!(at > 2.0L + kDetTol)) {
        throw numerical_error("translation_length_power: power lost hyperbolicity");
    }
    double length = static_cast<double>(2.0L * std::acosh(at / 2.0L));
    if (!std::isfinite(length)) {
        throw numerical_error("translation_length_power: power overflowed");
    }
    return length;
}

}  // namespace selberg
