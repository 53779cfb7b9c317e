#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "selberg/extended_log.hpp"
#include "selberg/group.hpp"
#include "selberg/spectrum.hpp"

namespace selberg {

// |tau| = e^{-2 pi^2 / ell} and its inverse
double tau_coordinate(double ell);
double tau_to_ell(double tau);

// a one-parameter pinching family in Fenchel-Nielsen coordinates
struct FamilySpec {
    std::array<double, 6> base_fn{};      // l1, l2, l3, theta1, theta2, theta3
    std::vector<int> pinch_indices;       // subset of {1, 2, 3}
    std::vector<double> ell_grid;         // strictly decreasing, > 0
    std::vector<int> n_values;            // weights, each >= 2
};

enum class EnvelopeKind {
    mt1_upper,
    cor2_lower,
    cor2_upper,
    zx2,
    zx1,
    mu_pole,
    prop3_lower,
    prop3_upper,
    cor4,
    cor6,
};

const char* envelope_kind_name(EnvelopeKind kind);

struct EnvelopeParams {
    int g = 2;
    int n = 2;
    std::vector<double> ell;  // pinching lengths; derived from tau when empty
    std::vector<double> tau;  // tau coordinates; derived from ell when empty
};

// natural log of the named degeneration envelope with implied constants set
// to 1; saturates when the log itself leaves double range
ExtendedLog envelope(EnvelopeKind kind, const EnvelopeParams& params);

// one surface per grid value, with the pinched cuff lengths substituted
std::vector<GroupPresentation> make_pinching_family(const FamilySpec& spec);

struct BoundPerN {
    double log_zn = 0.0;
    bool lower_ok = false;  // log Z(n) >= log Z(2), exactly
    bool upper_ok = false;  // log Z(n) - log Z(2) admitted by the mt1_upper envelope
    std::map<std::string, ExtendedLog> envelopes;  // n-dependent kinds
};

struct BoundRecord {
    double ell = 0.0;                // grid pinching length
    std::vector<double> tau_abs;     // per pinched curve
    double log_z2 = 0.0;
    std::map<std::string, ExtendedLog> envelopes;  // n-independent kinds
    std::map<int, BoundPerN> per_n;
    bool valid = false;
    std::string failure;  // reason when !valid
};

// Per member: enumerate, evaluate log Z(2) and log Z(n), tau coordinates and
// all envelopes, and the two-sided check against the mt1_upper envelope.
// max_depth is a floor; members pinched to tiny ell need depth ~ cutoff/ell
// to reach the high powers of the pinched cuff, and get it automatically.
// A member that fails to enumerate or stabilize produces an invalid record.
std::vector<BoundRecord> check_bounds(const std::vector<GroupPresentation>& family,
                                      const FamilySpec& spec,
                                      const std::vector<double>& cutoffs,
                                      int max_depth,
                                      const EnumerationOptions& opts = {});

}  // namespace selberg
