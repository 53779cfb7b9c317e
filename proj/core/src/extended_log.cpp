#include "selberg/extended_log.hpp"

#include <cmath>
#include <cstdio>

#include "selberg/errors.hpp"

namespace selberg {

ExtendedLog ExtendedLog::finite(double log_value) {
    ExtendedLog e;
    e.saturated_ = false;
    e.v_ = log_value;
    return e;
}

ExtendedLog ExtendedLog::from_inner_exponent(double inner) {
    ExtendedLog e;
    if (inner > kSaturationInner) {
        e.saturated_ = true;
        e.v_ = inner;
    } else {
        e.saturated_ = false;
        e.v_ = std::exp(inner);
    }
    return e;
}

double ExtendedLog::log_value() const {
    if (saturated_) throw numerical_error("ExtendedLog: log_value() on saturated value");
    return v_;
}

double ExtendedLog::inner_exponent() const {
    if (!saturated_) throw numerical_error("ExtendedLog: inner_exponent() on finite value");
    return v_;
}

ExtendedLog& ExtendedLog::operator+=(const ExtendedLog& other) {
    if (!saturated_ && !other.saturated_) {
        v_ += other.v_;
        return *this;
    }
    if (saturated_ && other.saturated_) {
        // log-sum-exp on the inner exponents: e^a + e^b = e^{max + log1p(e^{-|a-b|})}
        double hi = std::max(v_, other.v_);
        double lo = std::min(v_, other.v_);
        v_ = hi + std::log1p(std::exp(lo - hi));
        return *this;
    }
    if (!saturated_) {
        // finite + saturated: the finite part is below e^700 and vanishes
        // against a value above e^700 at this scale
        saturated_ = true;
        v_ = other.v_;
    }
    return *this;
}

bool operator<(const ExtendedLog& a, const ExtendedLog& b) {
    if (a.saturated_ != b.saturated_) return !a.saturated_;
    return a.v_ < b.v_;
}

bool operator==(const ExtendedLog& a, const ExtendedLog& b) {
    return a.saturated_ == b.saturated_ && a.v_ == b.v_;
}

bool ExtendedLog::admits(double log_x) const {
    if (saturated_) return true;  // any double is below e^{e^{700}}
    return log_x <= v_;
}

std::string ExtendedLog::wire() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%.17g", saturated_ ? "sat" : "finite", v_);
    return buf;
}

}  // namespace selberg
