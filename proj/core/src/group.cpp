#include "selberg/group.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "selberg/errors.hpp"

namespace selberg {

MoebiusElement GroupPresentation::letter(int signed_index) const {
    int idx = signed_index > 0 ? signed_index : -signed_index;
    if (idx < 1 || idx > static_cast<int>(generators.size())) {
        throw validation_error("word letter " + std::to_string(signed_index) +
                               " outside generator range");
    }
    const MoebiusElement& g = generators[static_cast<std::size_t>(idx - 1)];
    return signed_index > 0 ? g : g.inverse();
}

MoebiusElement GroupPresentation::evaluate(const Word& w) const {
    MoebiusElement m = MoebiusElement::identity();
    for (int l : w) m = m * letter(l);
    return m;
}

double GroupPresentation::relator_residual() const {
    double worst = 0.0;
    for (const Word& r : relators) {
        worst = std::max(worst, evaluate(r).psl_distance(MoebiusElement::identity()));
    }
    return worst;
}

void GroupPresentation::validate(double tol) const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (classify(generators[i]).kind != IsometryKind::hyperbolic) {
            throw validation_error("generator " + std::to_string(i + 1) +
                                   " is not hyperbolic");
        }
    }
    for (std::size_t i = 0; i < relators.size(); ++i) {
        double res = evaluate(relators[i]).psl_distance(MoebiusElement::identity());
        if (res > tol) {
            throw validation_error("relator " + std::to_string(i + 1) +
                                   " does not close up: residual " + std::to_string(res));
        }
    }
}

GroupPresentation builtin_octagon() {
    // side-pairing translations of the regular octagon centered at i: four
    // hyperbolic axes through i, rotated in steps of pi/4, all with
    // cosh(l/2) = 1 + sqrt 2.
    const double l = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    GroupPresentation out;
    out.genus = 2;
    out.label = "octagon";
    for (int k = 0; k < 4; ++k) {
        MoebiusElement rot = MoebiusElement::rotation_about_i(2.0 * k * M_PI / 8.0);
        out.generators.push_back(rot * MoebiusElement::axis_translation(l) *
                                 rot.inverse());
    }
    out.relators.push_back(Word{1, -2, 3, -4, -1, 2, -3, 4});
    return out;
}

namespace {

// reflection matrices act as z -> M conj(z); composing two of them gives the
// ordinary Moebius action of the matrix product
struct ReflectionMatrix {
    double a, b, c, d;  // determinant -1
};

ReflectionMatrix reflect_line_x0() { return {-1.0, 0.0, 0.0, 1.0}; }

ReflectionMatrix reflect_circle(double m, double r) {
    return {m / r, (r * r - m * m) / r, 1.0 / r, -m / r};
}

MoebiusElement compose(const ReflectionMatrix& p, const ReflectionMatrix& q) {
    return MoebiusElement(p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
                          p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

double mob_apply_boundary(const MoebiusElement& g, double x) {
    if (std::isinf(x)) {
        if (std::abs(g.c()) < 1e-300) return kInf;
        return g.a() / g.c();
    }
    double den = g.c() * x + g.d();
    if (std::abs(den) < 1e-300) return kInf;
    return (g.a() * x + g.b()) / den;
}

// boundary fixed points of a hyperbolic element, (repelling, attracting)
std::pair<double, double> fixed_feet(const MoebiusElement& g) {
    double a = g.a(), b = g.b(), c = g.c(), d = g.d();
    if (std::abs(c) < 1e-14) {
        double other = b / (d - a);
        // infinity is attracting when |a| > |d|
        return std::abs(a) > std::abs(d) ? std::make_pair(other, kInf)
                                         : std::make_pair(kInf, other);
    }
    double disc = std::sqrt((a + d) * (a + d) - 4.0);
    double x1 = (a - d + disc) / (2.0 * c);
    double x2 = (a - d - disc) / (2.0 * c);
    // attracting fixed point has derivative |cx + d|^{-2} < 1
    return std::abs(c * x1 + d) > 1.0 ? std::make_pair(x2, x1) : std::make_pair(x1, x2);
}

// PSL(2,R) element sending p -> 0, q -> infinity
MoebiusElement feet_to_standard(double p, double q) {
    double a, b, c, d;
    if (std::isinf(q)) {
        a = 1.0; b = -p; c = 0.0; d = 1.0;
    } else if (std::isinf(p)) {
        a = 0.0; b = 1.0; c = 1.0; d = -q;
    } else {
        a = 1.0; b = -p; c = 1.0; d = -q;
    }
    if (a * d - b * c < 0.0) {
        a = -a; b = -b;
    }
    return MoebiusElement(a, b, c, d);
}

// Frame of the axis of `g`: maps (0, inf) to (repelling, attracting) feet and i
// to the perpendicular foot toward the axis of `other`. In the standard chart
// the other axis becomes a circle (m, r) with m^2 > r^2 (disjointness), and the
// common perpendicular of the imaginary axis with that circle meets it at
// i sqrt(m^2 - r^2).
MoebiusElement axis_frame(const MoebiusElement& g, const MoebiusElement& other) {
    auto [p, q] = fixed_feet(g);
    MoebiusElement to_std = feet_to_standard(p, q);
    auto [po, qo] = fixed_feet(other);
    double ip = mob_apply_boundary(to_std, po);
    double iq = mob_apply_boundary(to_std, qo);
    if (std::isinf(ip) || std::isinf(iq)) {
        throw numerical_error("pants cuff axes share an ideal endpoint");
    }
    double m = (ip + iq) / 2.0;
    double r = std::abs(ip - iq) / 2.0;
    double s2 = m * m - r * r;
    if (!(s2 > 1e-15)) throw numerical_error("pants cuff axes are not disjoint");
    double s = std::sqrt(s2);
    return to_std.inverse() * MoebiusElement(std::sqrt(s), 0.0, 0.0, 1.0 / std::sqrt(s));
}

}  // namespace

GroupPresentation build_genus2_from_fn(double l1, double l2, double l3, double theta1,
                                       double theta2, double theta3) {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !(l3 > 0.0)) {
        throw validation_error("build_genus2_from_fn: cuff lengths must be positive");
    }
    // pair of pants from three pairwise disjoint geodesics: L1 the imaginary
    // axis, L2 and L3 circles to its right, with d(L2,L3) = l1/2,
    // d(L3,L1) = l2/2, d(L1,L2) = l3/2; the cuffs are reflection products.
    const double d1 = l1 / 2.0, d2 = l2 / 2.0, d3 = l3 / 2.0;
    const double c1 = std::cosh(d1), c2 = std::cosh(d2), c3 = std::cosh(d3);
    const double s2 = std::sinh(d2), s3 = std::sinh(d3);

    const double m2 = c3 / s3, r2 = 1.0 / s3;
    // inversive distance d(L2,L3) = l1/2 pins r3 by a quadratic; the larger
    // root is the branch with L3 strictly beyond L2 (no subtractive cancellation)
    const double B = (c2 * c3 + c1) / s3;
    const double disc = B * B - s2 * s2;
    if (!(disc > 0.0)) throw numerical_error("pants construction: hexagon discriminant <= 0");
    const double r3 = (B + std::sqrt(disc)) / (s2 * s2);
    const double m3 = r3 * c2;
    if (!(m3 - r3 > m2 + r2)) {
        throw numerical_error("pants construction: boundary circles not disjoint");
    }

    ReflectionMatrix R1 = reflect_line_x0();
    ReflectionMatrix R2 = reflect_circle(m2, r2);
    ReflectionMatrix R3 = reflect_circle(m3, r3);
    MoebiusElement A1 = compose(R2, R3);
    MoebiusElement A2 = compose(R3, R1);

    // glue a second identical pants across each cuff: D_i = F_i T(theta_i) J F_i^{-1}
    // (J the half-turn about the frame origin) conjugates each cuff to its own
    // inverse for every twist, which is exactly the edge condition making the
    // genus-2 relator close up.
    MoebiusElement A3 = compose(R1, R2);
    MoebiusElement F1 = axis_frame(A1, A2);
    MoebiusElement F2 = axis_frame(A2, A3);
    MoebiusElement F3 = axis_frame(A3, A1);
    const MoebiusElement J(0.0, -1.0, 1.0, 0.0);
    auto glue = [&](const MoebiusElement& F, double theta) {
        return F * MoebiusElement::axis_translation(theta) * J * F.inverse();
    };
    MoebiusElement D1 = glue(F1, theta1);
    MoebiusElement D2 = glue(F2, theta2);
    MoebiusElement D3 = glue(F3, theta3);

    GroupPresentation out;
    out.genus = 2;
    out.label = "fn";
    out.generators = {A1, A2, D2 * D1.inverse(), D3 * D1.inverse()};
    out.relators.push_back(Word{1, 2, 4, -1, -3, -2, 3, -4});
    double res = out.relator_residual();
    if (res > 1e-9) {
        throw numerical_error("fn construction: relator residual " + std::to_string(res));
    }
    return out;
}

GroupPresentation builtin_fn_base() {
    GroupPresentation g = build_genus2_from_fn(1.0, 2.0, 2.0, 0.0, 0.0, 0.0);
    g.label = "fn-base";
    return g;
}

}  // namespace selberg
