// Hyperbolic plane primitives: upper half-plane points, PSL(2,R) elements as
// sign-normalized unit-determinant 2x2 matrices, distances, and the trace
// classification of isometries.
#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace selberg {

inline constexpr double kDetTol = 1e-12;     // determinant / trace equality slack
inline constexpr double kLengthTol = 1e-9;   // geodesic length comparisons

struct Point {
    double x = 0.0;
    double y = 1.0;  // must stay strictly positive
};

enum class IsometryKind { identity, elliptic, parabolic, hyperbolic };

struct IsometryClass {
    IsometryKind kind = IsometryKind::identity;
    double length = 0.0;  // translation length; meaningful for hyperbolic only
};

// Unit-determinant 2x2 real matrix with a canonical PSL sign: the first entry
// of (a, b, c, d) with magnitude above kDetTol is positive.
class MoebiusElement {
  public:
    MoebiusElement() : m_{1.0, 0.0, 0.0, 1.0} {}
    MoebiusElement(double a, double b, double c, double d);

    static MoebiusElement identity() { return MoebiusElement(); }
    // entries the caller has already validated as unit-determinant: the sign
    // convention is applied but the numbers are kept verbatim, so a saved
    // group reloads to bit-identical generators
    static MoebiusElement from_unit_entries(double a, double b, double c, double d);
    // diag(e^{l/2}, e^{-l/2}): translation by l along the imaginary axis.
    static MoebiusElement axis_translation(double l);
    // rotation of angle phi about i (elliptic for phi not a multiple of 2pi).
    static MoebiusElement rotation_about_i(double phi);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }

    double trace() const { return m_[0] + m_[3]; }
    MoebiusElement inverse() const;
    bool is_identity(double tol = kDetTol) const;

    // matrix product, renormalized (determinant and sign) to suppress drift
    friend MoebiusElement operator*(const MoebiusElement& g, const MoebiusElement& h);
    Point apply(const Point& z) const;

    // max entrywise distance min(|g - h|, |g + h|), the PSL-aware metric
    double psl_distance(const MoebiusElement& other) const;

  private:
    std::array<double, 4> m_;
    void normalize();
};

// Half-plane distance, cosh^2(d/2) = |z - conj(w)|^2 / (4 y v), evaluated as
// 2 asinh(sqrt(((x-u)^2 + (y-v)^2)/(4 y v))) so it stays exact for close points.
double hyperbolic_distance(const Point& z, const Point& w);

IsometryClass classify(const MoebiusElement& g);

// l(g^m) computed from the m-fold matrix product, carried in wide
// intermediates so the linearity l(g^m) = m l(g) survives rounding.
double translation_length_power(const MoebiusElement& g, int m);

}  // namespace selberg
