#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace heatflow {

// Real number stored as sign * exp(log). Zero has sign 0 and log = -inf.
class LogVal {
  public:
    LogVal() = default;
    explicit LogVal(double x);

    static LogVal from_log(double log_magnitude, int sign = 1);
    static LogVal zero() { return LogVal(); }

    int sign() const { return sign_; }
    double log() const { return log_; }
    bool is_zero() const { return sign_ == 0; }
    double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

    LogVal abs() const { return from_log(log_, sign_ == 0 ? 0 : 1); }
    LogVal operator-() const { return from_log(log_, -sign_); }
    LogVal pow(double q) const; // requires a nonnegative value unless q is an integer

    LogVal &operator+=(const LogVal &o);
    LogVal &operator-=(const LogVal &o) { return *this += -o; }
    LogVal &operator*=(const LogVal &o);
    LogVal &operator/=(const LogVal &o);

    friend LogVal operator+(LogVal a, const LogVal &b) { return a += b; }
    friend LogVal operator-(LogVal a, const LogVal &b) { return a -= b; }
    friend LogVal operator*(LogVal a, const LogVal &b) { return a *= b; }
    friend LogVal operator/(LogVal a, const LogVal &b) { return a /= b; }

    // Compares signed values.
    friend bool operator<(const LogVal &a, const LogVal &b);
    friend bool operator>(const LogVal &a, const LogVal &b) { return b < a; }

    std::string str() const;

  private:
    int sign_ = 0;
    double log_ = -std::numeric_limits<double>::infinity();
};

// a + b, also reporting whether opposite signs cancelled more than `digits`
// decimal digits of the larger operand.
LogVal add_checked(const LogVal &a, const LogVal &b, bool &cancelled, double digits = 12.0);

// log(exp(a) + exp(b)), tolerant of -inf.
double log_add(double a, double b);

} // namespace heatflow
