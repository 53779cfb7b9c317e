// Saturating log-scale scalar for doubly-exponential envelope values: a plain
// double holds log(envelope) until that log itself is e^{inner} with
// inner > 700, past which only the inner exponent is tracked.
#pragma once

#include <compare>
#include <string>

namespace selberg {

class ExtendedLog {
  public:
    static constexpr double kSaturationInner = 700.0;

    static ExtendedLog finite(double log_value);
    // the value e^{inner} interpreted at log scale, saturating past 700
    static ExtendedLog from_inner_exponent(double inner);

    bool is_saturated() const { return saturated_; }
    double log_value() const;       // throws when saturated
    double inner_exponent() const;  // throws when finite

    // accumulation of envelope terms at log scale; finite parts are absorbed
    // into a saturated partner (they are smaller by hundreds of orders)
    ExtendedLog& operator+=(const ExtendedLog& other);
    friend ExtendedLog operator+(ExtendedLog a, const ExtendedLog& b) { return a += b; }

    // total order: every finite value sorts below every saturated one
    friend bool operator<(const ExtendedLog& a, const ExtendedLog& b);
    friend bool operator==(const ExtendedLog& a, const ExtendedLog& b);
    friend bool operator<=(const ExtendedLog& a, const ExtendedLog& b) {
        return a < b || a == b;
    }

    // true when the finite quantity log_x is <= this envelope log
    bool admits(double log_x) const;

    // wire format: "finite:<17 sig digits>" or "sat:<17 sig digits>"
    std::string wire() const;

  private:
    bool saturated_ = false;
    double v_ = 0.0;  // log value when finite, inner exponent when saturated
};

}  // namespace selberg
