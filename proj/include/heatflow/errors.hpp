#pragma once

#include <stdexcept>
#include <string>

namespace heatflow {

// Bad input: flags, config files, out-of-domain parameters.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Anything that goes wrong while computing a number.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string &kind, const std::string &msg)
        : std::runtime_error(msg), kind_(kind) {}
    const std::string &kind() const { return kind_; }

  private:
    std::string kind_;
};

class QuadratureError : public NumericalError {
  public:
    explicit QuadratureError(const std::string &msg) : NumericalError("quadrature", msg) {}
};

class PoleError : public NumericalError {
  public:
    explicit PoleError(const std::string &msg) : NumericalError("pole", msg) {}
};

class DomainError : public NumericalError {
  public:
    explicit DomainError(const std::string &msg) : NumericalError("domain", msg) {}
};

} // namespace heatflow
