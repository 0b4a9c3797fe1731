#include "heatflow/logval.hpp"

#include <sstream>

#include "heatflow/errors.hpp"

namespace heatflow {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogVal::LogVal(double x) {
    if (std::isnan(x)) throw DomainError("LogVal from NaN");
    if (x > 0) {
        sign_ = 1;
        log_ = std::log(x);
    } else if (x < 0) {
        sign_ = -1;
        log_ = std::log(-x);
    }
}

LogVal LogVal::from_log(double log_magnitude, int sign) {
    if (std::isnan(log_magnitude)) throw DomainError("LogVal from NaN log");
    LogVal v;
    if (sign == 0 || log_magnitude == kNegInf) return v;
    v.sign_ = sign > 0 ? 1 : -1;
    v.log_ = log_magnitude;
    return v;
}

LogVal LogVal::pow(double q) const {
    if (sign_ == 0) {
        if (q > 0) return LogVal();
        if (q == 0) return LogVal(1.0);
        throw DomainError("LogVal: zero to a negative power");
    }
    int s = 1;
    if (sign_ < 0) {
        double qi = std::round(q);
        if (qi != q) throw DomainError("LogVal: fractional power of a negative value");
        s = (static_cast<long long>(qi) % 2 == 0) ? 1 : -1;
    }
    return from_log(q * log_, s);
}

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

LogVal add_checked(const LogVal &a, const LogVal &b, bool &cancelled, double digits) {
    cancelled = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogVal &big = a.log() >= b.log() ? a : b;
    const LogVal &small = a.log() >= b.log() ? b : a;
    double d = small.log() - big.log(); // <= 0
    if (big.sign() == small.sign()) return LogVal::from_log(big.log() + std::log1p(std::exp(d)), big.sign());
    double m = -std::expm1(d); // 1 - e^d, exact near d = 0
    if (m <= 0) {
        cancelled = true;
        return LogVal();
    }
    double lm = std::log(m);
    if (lm < -digits * std::log(10.0)) cancelled = true;
    return LogVal::from_log(big.log() + lm, big.sign());
}

LogVal &LogVal::operator+=(const LogVal &o) {
    bool c = false;
    *this = add_checked(*this, o, c);
    return *this;
}

LogVal &LogVal::operator*=(const LogVal &o) {
    if (sign_ == 0 || o.sign_ == 0) {
        *this = LogVal();
        return *this;
    }
    sign_ *= o.sign_;
    log_ += o.log_;
    return *this;
}

LogVal &LogVal::operator/=(const LogVal &o) {
    if (o.sign_ == 0) throw DomainError("LogVal: division by zero");
    if (sign_ == 0) return *this;
    sign_ *= o.sign_;
    log_ -= o.log_;
    return *this;
}

bool operator<(const LogVal &a, const LogVal &b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
}

std::string LogVal::str() const {
    std::ostringstream os;
    if (sign_ == 0) return "0";
    os << (sign_ < 0 ? "-" : "") << "exp(" << log_ << ")";
    return os.str();
}

} // namespace heatflow
