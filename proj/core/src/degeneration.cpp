#include "selberg/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "selberg/detlap.hpp"
#include "selberg/errors.hpp"
#include "selberg/zeta.hpp"

namespace selberg {

double tau_coordinate(double ell) {
    if (!(ell > 0.0)) throw validation_error("tau_coordinate: ell must be > 0");
    return std::exp(-2.0 * M_PI * M_PI / ell);
}

double tau_to_ell(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw validation_error("tau_to_ell: tau must lie in (0, 1)");
    }
    return -2.0 * M_PI * M_PI / std::log(tau);
}

const char* envelope_kind_name(EnvelopeKind kind) {
    switch (kind) {
        case EnvelopeKind::mt1_upper: return "mt1_upper";
        case EnvelopeKind::cor2_lower: return "cor2_lower";
        case EnvelopeKind::cor2_upper: return "cor2_upper";
        case EnvelopeKind::zx2: return "zx2";
        case EnvelopeKind::zx1: return "zx1";
        case EnvelopeKind::mu_pole: return "mu_pole";
        case EnvelopeKind::prop3_lower: return "prop3_lower";
        case EnvelopeKind::prop3_upper: return "prop3_upper";
        case EnvelopeKind::cor4: return "cor4";
        case EnvelopeKind::cor6: return "cor6";
    }
    throw validation_error("envelope: unknown kind");
}

namespace {

// e^{160 pi (g-1)/ell} as a summand: saturated past double range, otherwise a
// finite contribution scaled by `factor`
ExtendedLog double_exp_term(int g, double ell, double factor) {
    double inner = 160.0 * M_PI * (g - 1) / ell;
    if (inner > ExtendedLog::kSaturationInner) return ExtendedLog::from_inner_exponent(inner);
    return ExtendedLog::finite(std::exp(inner) * factor);
}

struct ResolvedParams {
    int g;
    int n;
    std::vector<double> ell;
    std::vector<double> neg_log_tau;  // -log|tau| = 2 pi^2 / ell, always > 0
};

ResolvedParams resolve(const EnvelopeParams& p, bool needs_curves, bool needs_n) {
    if (p.g < 2) throw validation_error("envelope: genus must be >= 2");
    if (needs_n && p.n < 2) throw validation_error("envelope: n must be >= 2");
    ResolvedParams r;
    r.g = p.g;
    r.n = p.n;
    if (!p.ell.empty()) {
        r.ell = p.ell;
        if (!p.tau.empty() && p.tau.size() != p.ell.size()) {
            throw validation_error("envelope: ell and tau lists differ in size");
        }
    } else if (!p.tau.empty()) {
        for (double tau : p.tau) r.ell.push_back(tau_to_ell(tau));
    } else if (needs_curves) {
        throw validation_error("envelope: this kind needs an ell or tau list");
    }
    for (double l : r.ell) {
        if (!(l > 0.0)) throw validation_error("envelope: lengths must be > 0");
        r.neg_log_tau.push_back(2.0 * M_PI * M_PI / l);
    }
    return r;
}

double log_poly_n(int n) {  // log(4n^2 - 4n - 3), positive for n >= 2
    double v = 4.0 * n * n - 4.0 * n - 3.0;
    return std::log(v);
}

}  // namespace

ExtendedLog envelope(EnvelopeKind kind, const EnvelopeParams& params) {
    const bool needs_n = kind != EnvelopeKind::cor2_lower && kind != EnvelopeKind::zx2 &&
                         kind != EnvelopeKind::zx1;
    const bool needs_curves = kind != EnvelopeKind::cor6;
    ResolvedParams p = resolve(params, needs_curves, needs_n);
    const int g = p.g, n = p.n;

    switch (kind) {
        case EnvelopeKind::mt1_upper: {
            ExtendedLog acc = ExtendedLog::finite(log_poly_n(n));
            for (double l : p.ell) acc += double_exp_term(g, l, 1.0 / (l * l));
            return acc;
        }
        case EnvelopeKind::cor2_lower: {
            double sum = 0.0;
            for (double big_l : p.neg_log_tau) sum += 3.0 * std::log(big_l) - big_l / 6.0;
            return ExtendedLog::finite(sum);
        }
        case EnvelopeKind::cor2_upper: {
            double finite_part = log_poly_n(n);
            for (double big_l : p.neg_log_tau) {
                finite_part += 3.0 * std::log(big_l) - big_l / 6.0;
            }
            ExtendedLog acc = ExtendedLog::finite(finite_part);
            for (std::size_t j = 0; j < p.ell.size(); ++j) {
                acc += double_exp_term(g, p.ell[j], p.neg_log_tau[j]);
            }
            return acc;
        }
        case EnvelopeKind::zx2: {
            double sum = 0.0;
            for (double l : p.ell) sum += -M_PI * M_PI / (3.0 * l) - 3.0 * std::log(l);
            return ExtendedLog::finite(sum);
        }
        case EnvelopeKind::zx1: {
            double sum = 0.0;
            for (double l : p.ell) sum += -M_PI * M_PI / (3.0 * l) - std::log(l);
            return ExtendedLog::finite(sum);
        }
        case EnvelopeKind::mu_pole: {
            double sum = 0.0;
            for (double big_l : p.neg_log_tau) sum += 0.5 * n * (n - 1.0) * big_l;
            return ExtendedLog::finite(sum);
        }
        case EnvelopeKind::prop3_lower:
        case EnvelopeKind::prop3_upper: {
            double log_c_gn = spectral_constants(g, n).log_c_gn;
            double log_c_g1 = spectral_constants(g, 1).log_c_gn;
            double k = 6.0 * n * n - 6.0 * n;
            double sum = static_cast<double>(g) * n * n + log_c_gn - (k + 1.0) * log_c_g1;
            for (double big_l : p.neg_log_tau) {
                sum += 2.0 * n * (n - 1.0) * big_l - (k - 2.0) * std::log(big_l);
            }
            if (kind == EnvelopeKind::prop3_lower) return ExtendedLog::finite(sum);
            ExtendedLog acc = ExtendedLog::finite(sum + log_poly_n(n));
            for (std::size_t j = 0; j < p.ell.size(); ++j) {
                acc += double_exp_term(g, p.ell[j], p.neg_log_tau[j]);
            }
            return acc;
        }
        case EnvelopeKind::cor4: {
            double k = 6.0 * n * n - 6.0 * n;
            double sum = log_poly_n(n) + static_cast<double>(g) * n * n;
            for (double big_l : p.neg_log_tau) {
                sum += (2.0 * n * (n - 1.0) + 1.0 / 6.0) * big_l - (k + 1.0) * std::log(big_l);
            }
            ExtendedLog acc = ExtendedLog::finite(sum);
            for (std::size_t j = 0; j < p.ell.size(); ++j) {
                acc += double_exp_term(g, p.ell[j], p.neg_log_tau[j]);
            }
            return acc;
        }
        case EnvelopeKind::cor6:
            return ExtendedLog::finite(2.0 * std::log(static_cast<double>(n)));
    }
    throw validation_error("envelope: unknown kind");
}

std::vector<GroupPresentation> make_pinching_family(const FamilySpec& spec) {
    if (spec.pinch_indices.empty()) {
        throw validation_error("pinching family: no pinch indices given");
    }
    std::set<int> idx(spec.pinch_indices.begin(), spec.pinch_indices.end());
    if (idx.size() != spec.pinch_indices.size()) {
        throw validation_error("pinching family: duplicate pinch index");
    }
    for (int i : idx) {
        if (i < 1 || i > 3) {
            throw validation_error("pinching family: pinch indices must be in {1, 2, 3}");
        }
    }
    for (std::size_t i = 0; i + 1 < spec.ell_grid.size(); ++i) {
        if (!(spec.ell_grid[i] > spec.ell_grid[i + 1])) {
            throw validation_error("pinching family: ell grid must be strictly decreasing");
        }
    }
    for (double l : spec.ell_grid) {
        if (!(l > 0.0)) throw validation_error("pinching family: grid lengths must be > 0");
    }

    std::vector<GroupPresentation> family;
    for (double l : spec.ell_grid) {
        std::array<double, 6> fn = spec.base_fn;
        for (int i : idx) fn[static_cast<std::size_t>(i - 1)] = l;
        GroupPresentation g =
            build_genus2_from_fn(fn[0], fn[1], fn[2], fn[3], fn[4], fn[5]);
        char label[64];
        std::snprintf(label, sizeof label, "fn-pinch:%.6g", l);
        g.label = label;
        family.push_back(std::move(g));
    }
    return family;
}

std::vector<BoundRecord> check_bounds(const std::vector<GroupPresentation>& family,
                                      const FamilySpec& spec,
                                      const std::vector<double>& cutoffs,
                                      int max_depth,
                                      const EnumerationOptions& opts) {
    if (family.size() != spec.ell_grid.size()) {
        throw validation_error("check_bounds: family and grid sizes differ");
    }
    if (cutoffs.size() != 1 && cutoffs.size() != family.size()) {
        throw validation_error("check_bounds: need one cutoff or one per member");
    }
    for (int n : spec.n_values) {
        if (n < 2) throw validation_error("check_bounds: weights must be >= 2");
    }
    const int k_max = 80;
    const int g_genus = 2;

    std::vector<BoundRecord> records;
    for (std::size_t i = 0; i < family.size(); ++i) {
        double cutoff = cutoffs.size() == 1 ? cutoffs[0] : cutoffs[i];
        double ell = spec.ell_grid[i];
        BoundRecord rec;
        rec.ell = ell;
        rec.tau_abs.assign(spec.pinch_indices.size(), tau_coordinate(ell));

        // the pinched cuff contributes powers up to cutoff/ell letters deep;
        // if the walk still finds new classes in its last layer, deepen and
        // retry rather than trusting an uncertified spectrum
        int depth = std::max(max_depth,
                             static_cast<int>(std::ceil(cutoff / ell)) + 2);
        try {
            LengthSpectrum ls = enumerate_spectrum(family[i], cutoff, depth, opts);
            for (int retry = 0; retry < 4 && !ls.stabilized; ++retry) {
                depth += 2;
                ls = enumerate_spectrum(family[i], cutoff, depth, opts);
            }
            if (!ls.stabilized) {
                throw numerical_error("spectrum did not stabilize at this depth");
            }
            rec.log_z2 = selberg_zeta_log(ls, 2.0, k_max).log_value;

            EnvelopeParams free_params;
            free_params.g = g_genus;
            free_params.ell.assign(spec.pinch_indices.size(), ell);
            for (EnvelopeKind kind : {EnvelopeKind::cor2_lower, EnvelopeKind::zx2,
                                      EnvelopeKind::zx1}) {
                rec.envelopes.emplace(envelope_kind_name(kind),
                                      envelope(kind, free_params));
            }
            for (int n : spec.n_values) {
                BoundPerN per;
                per.log_zn = n == 2 ? rec.log_z2
                                    : selberg_zeta_log(ls, static_cast<double>(n),
                                                       k_max).log_value;
                EnvelopeParams np = free_params;
                np.n = n;
                for (EnvelopeKind kind :
                     {EnvelopeKind::mt1_upper, EnvelopeKind::cor2_upper,
                      EnvelopeKind::mu_pole, EnvelopeKind::prop3_lower,
                      EnvelopeKind::prop3_upper, EnvelopeKind::cor4,
                      EnvelopeKind::cor6}) {
                    per.envelopes.emplace(envelope_kind_name(kind), envelope(kind, np));
                }
                per.lower_ok = per.log_zn >= rec.log_z2;
                per.upper_ok =
                    per.envelopes.at("mt1_upper").admits(per.log_zn - rec.log_z2);
                rec.per_n.emplace(n, std::move(per));
            }
            rec.valid = true;
        } catch (const std::exception& e) {
            rec.valid = false;
            rec.failure = e.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace selberg
