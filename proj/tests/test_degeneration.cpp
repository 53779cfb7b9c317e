#include <cmath>
#include <gtest/gtest.h>
#include <random>

#include "selberg/degeneration.hpp"
#include "selberg/errors.hpp"

using namespace selberg;

namespace {

EnvelopeParams params_for(double ell, int n = 2) {
    EnvelopeParams p;
    p.n = n;
    p.ell = {ell};
    return p;
}

FamilySpec small_family_spec() {
    FamilySpec spec;
    spec.base_fn = {1.0, 2.0, 2.0, 0.0, 0.0, 0.0};
    spec.pinch_indices = {1};
    spec.ell_grid = {1.0, 0.5};
    spec.n_values = {2, 3};
    return spec;
}

}  // namespace

TEST(Tau, RoundTripAndMonotone) {
    for (double ell : {0.05, 0.3, 1.0, 2.7}) {
        double tau = tau_coordinate(ell);
        EXPECT_GT(tau, 0.0);
        EXPECT_LT(tau, 1.0);
        EXPECT_NEAR(tau_to_ell(tau), ell, 1e-12 * ell);
    }
    EXPECT_LT(tau_coordinate(0.5), tau_coordinate(1.0));
    EXPECT_THROW(tau_coordinate(0.0), validation_error);
    EXPECT_THROW(tau_to_ell(1.5), validation_error);
}

TEST(ExtendedLogTest, FiniteArithmeticIsRealAddition) {
    ExtendedLog a = ExtendedLog::finite(3.0);
    ExtendedLog b = ExtendedLog::finite(-1.25);
    ExtendedLog c = a + b;
    EXPECT_FALSE(c.is_saturated());
    EXPECT_DOUBLE_EQ(c.log_value(), 1.75);
}

TEST(ExtendedLogTest, SaturationAbsorbsFiniteAndCombinesByLogSumExp) {
    ExtendedLog sat = ExtendedLog::from_inner_exponent(900.0);
    EXPECT_TRUE(sat.is_saturated());
    EXPECT_THROW(sat.log_value(), numerical_error);
    ExtendedLog mixed = sat + ExtendedLog::finite(5.0e300);
    EXPECT_TRUE(mixed.is_saturated());
    EXPECT_DOUBLE_EQ(mixed.inner_exponent(), 900.0);
    // two saturated terms: e^a + e^b tracked on the inner exponents
    ExtendedLog twice = sat + ExtendedLog::from_inner_exponent(900.0);
    EXPECT_NEAR(twice.inner_exponent(), 900.0 + std::log(2.0), 1e-12);
    ExtendedLog dominated = sat + ExtendedLog::from_inner_exponent(800.0);
    EXPECT_NEAR(dominated.inner_exponent(), 900.0, 1e-12);
    // below the threshold the same constructor stays finite
    ExtendedLog small = ExtendedLog::from_inner_exponent(10.0);
    EXPECT_FALSE(small.is_saturated());
    EXPECT_DOUBLE_EQ(small.log_value(), std::exp(10.0));
    EXPECT_THROW(small.inner_exponent(), numerical_error);
}

TEST(ExtendedLogTest, OrderingOnRandomTriples) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> fin(-50.0, 50.0);
    std::uniform_real_distribution<double> inner(701.0, 1200.0);
    for (int i = 0; i < 200; ++i) {
        double x = fin(rng), y = fin(rng);
        ExtendedLog fx = ExtendedLog::finite(x);
        ExtendedLog fy = ExtendedLog::finite(y);
        EXPECT_EQ(fx < fy, x < y);
        EXPECT_EQ(fx == fy, x == y);
        ExtendedLog s = ExtendedLog::from_inner_exponent(inner(rng));
        EXPECT_TRUE(fx < s);
        EXPECT_FALSE(s < fx);
        EXPECT_TRUE(fx <= s);
    }
    ExtendedLog s1 = ExtendedLog::from_inner_exponent(800.0);
    ExtendedLog s2 = ExtendedLog::from_inner_exponent(801.0);
    EXPECT_TRUE(s1 < s2);
    EXPECT_TRUE(s1 == ExtendedLog::from_inner_exponent(800.0));
}

TEST(ExtendedLogTest, AdmitsAndWire) {
    ExtendedLog bound = ExtendedLog::finite(2.5);
    EXPECT_TRUE(bound.admits(2.5));
    EXPECT_TRUE(bound.admits(-100.0));
    EXPECT_FALSE(bound.admits(2.5000001));
    EXPECT_TRUE(ExtendedLog::from_inner_exponent(900.0).admits(1.0e308));
    EXPECT_EQ(ExtendedLog::finite(2.5).wire(), "finite:2.5");
    EXPECT_EQ(ExtendedLog::from_inner_exponent(900.0).wire(), "sat:900");
}

TEST(Envelopes, PinnedSpotValues) {
    ExtendedLog zx2_1 = envelope(EnvelopeKind::zx2, params_for(1.0));
    EXPECT_NEAR(zx2_1.log_value(), -3.2898681336964528, 1e-12);
    ExtendedLog zx2_half = envelope(EnvelopeKind::zx2, params_for(0.5));
    EXPECT_NEAR(zx2_half.log_value(), -4.500294725713069, 1e-12);

    ExtendedLog mt1 = envelope(EnvelopeKind::mt1_upper, params_for(3.0, 3));
    EXPECT_EQ(mt1.wire(), "finite:6.4937619204370243e+71");
    ExtendedLog mt1_sat = envelope(EnvelopeKind::mt1_upper, params_for(0.05, 3));
    EXPECT_EQ(mt1_sat.wire(), "sat:10053.096491487337");

    ExtendedLog mu = envelope(EnvelopeKind::mu_pole, params_for(0.5, 3));
    EXPECT_NEAR(mu.log_value(), 118.43525281307231, 1e-10);

    ExtendedLog c6 = envelope(EnvelopeKind::cor6, params_for(1.0, 5));
    EXPECT_NEAR(c6.log_value(), 2.0 * std::log(5.0), 1e-14);

    // collar term 3 log L - L/6 with L = 2 pi^2 / ell
    const double big_l = 2.0 * M_PI * M_PI / 0.6;
    ExtendedLog c2 = envelope(EnvelopeKind::cor2_lower, params_for(0.6));
    EXPECT_NEAR(c2.log_value(), 3.0 * std::log(big_l) - big_l / 6.0, 1e-12);
}

TEST(Envelopes, TauAndEllGiveTheSameAnswer) {
    EnvelopeParams by_ell = params_for(0.8, 3);
    EnvelopeParams by_tau;
    by_tau.n = 3;
    by_tau.tau = {tau_coordinate(0.8)};
    for (EnvelopeKind kind : {EnvelopeKind::mt1_upper, EnvelopeKind::cor2_upper,
                              EnvelopeKind::mu_pole, EnvelopeKind::cor4}) {
        ExtendedLog a = envelope(kind, by_ell);
        ExtendedLog b = envelope(kind, by_tau);
        ASSERT_EQ(a.is_saturated(), b.is_saturated()) << envelope_kind_name(kind);
        double av = a.is_saturated() ? a.inner_exponent() : a.log_value();
        double bv = b.is_saturated() ? b.inner_exponent() : b.log_value();
        // the tau list round-trips through log/exp, so allow last-digit slack
        EXPECT_NEAR(av / bv, 1.0, 1e-12) << envelope_kind_name(kind);
    }
}

TEST(Envelopes, Validation) {
    EnvelopeParams no_curves;
    no_curves.n = 3;
    EXPECT_THROW(envelope(EnvelopeKind::mt1_upper, no_curves), validation_error);
    // cor6 depends only on the weight
    EXPECT_NO_THROW(envelope(EnvelopeKind::cor6, no_curves));
    EnvelopeParams bad_n = params_for(1.0, 1);
    EXPECT_THROW(envelope(EnvelopeKind::mu_pole, bad_n), validation_error);
    // zx2 ignores n, so the same params pass there
    EXPECT_NO_THROW(envelope(EnvelopeKind::zx2, bad_n));
    EnvelopeParams bad_genus = params_for(1.0);
    bad_genus.g = 1;
    EXPECT_THROW(envelope(EnvelopeKind::zx2, bad_genus), validation_error);
}

TEST(PinchingFamily, LabelsAndSubstitution) {
    FamilySpec spec = small_family_spec();
    std::vector<GroupPresentation> family = make_pinching_family(spec);
    ASSERT_EQ(family.size(), 2u);
    EXPECT_EQ(family[0].label, "fn-pinch:1");
    EXPECT_EQ(family[1].label, "fn-pinch:0.5");
    for (const GroupPresentation& g : family) {
        EXPECT_LT(g.relator_residual(), 1e-9);
    }
}

TEST(PinchingFamily, Validation) {
    FamilySpec spec = small_family_spec();
    spec.pinch_indices = {};
    EXPECT_THROW(make_pinching_family(spec), validation_error);
    spec = small_family_spec();
    spec.pinch_indices = {1, 1};
    EXPECT_THROW(make_pinching_family(spec), validation_error);
    spec = small_family_spec();
    spec.pinch_indices = {4};
    EXPECT_THROW(make_pinching_family(spec), validation_error);
    spec = small_family_spec();
    spec.ell_grid = {0.5, 1.0};
    EXPECT_THROW(make_pinching_family(spec), validation_error);
}

TEST(CheckBounds, SmallFamilyProducesValidTwoSidedRecords) {
    FamilySpec spec = small_family_spec();
    std::vector<GroupPresentation> family = make_pinching_family(spec);
    EnumerationOptions opts;
    opts.threads = 4;
    std::vector<BoundRecord> records = check_bounds(family, spec, {5.0}, 7, opts);
    ASSERT_EQ(records.size(), 2u);
    for (const BoundRecord& rec : records) {
        EXPECT_TRUE(rec.valid) << rec.failure;
        EXPECT_LT(rec.log_z2, 0.0);
        ASSERT_EQ(rec.tau_abs.size(), 1u);
        EXPECT_NEAR(rec.tau_abs[0], tau_coordinate(rec.ell), 1e-15);
        EXPECT_EQ(rec.envelopes.count("zx2"), 1u);
        EXPECT_EQ(rec.envelopes.count("cor2_lower"), 1u);
        ASSERT_EQ(rec.per_n.size(), 2u);
        for (const auto& [n, per] : rec.per_n) {
            EXPECT_TRUE(per.lower_ok) << "n=" << n;
            EXPECT_TRUE(per.upper_ok) << "n=" << n;
            EXPECT_GE(per.log_zn, rec.log_z2);
            EXPECT_EQ(per.envelopes.count("mt1_upper"), 1u);
            EXPECT_EQ(per.envelopes.count("cor6"), 1u);
        }
    }
    // deeper pinching pushes log Z(2) down
    EXPECT_LT(records[1].log_z2, records[0].log_z2);
}

TEST(CheckBounds, StarvedEnumerationFlagsTheRecord) {
    FamilySpec spec = small_family_spec();
    spec.ell_grid = {1.0};
    spec.n_values = {2};
    std::vector<GroupPresentation> family = make_pinching_family(spec);
    EnumerationOptions opts;
    opts.budget = 50;  // expansions run out immediately
    std::vector<BoundRecord> records = check_bounds(family, spec, {5.0}, 7, opts);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_FALSE(records[0].valid);
    EXPECT_FALSE(records[0].failure.empty());
}

TEST(CheckBounds, Validation) {
    FamilySpec spec = small_family_spec();
    std::vector<GroupPresentation> family = make_pinching_family(spec);
    EXPECT_THROW(check_bounds(family, spec, {5.0, 5.0, 5.0}, 7), validation_error);
    FamilySpec bad = spec;
    bad.n_values = {1};
    EXPECT_THROW(check_bounds(family, bad, {5.0}, 7), validation_error);
    std::vector<GroupPresentation> short_family(family.begin(), family.begin() + 1);
    EXPECT_THROW(check_bounds(short_family, spec, {5.0}, 7), validation_error);
}
