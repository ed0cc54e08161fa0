#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace omog {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Violated precondition or inconsistent dimensions in a call.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// Invalid configuration value.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Numerically degenerate system (singular solve, collapsed subspace).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// File ingestion / emission failure.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Per-frame alignment did not converge or diverged past the guard bounds.
class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& msg) : Error(msg) {}
};

/// One video frame flattened to d intensities in [0,1], row-major.
struct Frame {
  Vector values;
  int width = 0;
  int height = 0;

  Frame() = default;
  Frame(int w, int h) : values(Vector::Zero(static_cast<Index>(w) * h)), width(w), height(h) {}
  Frame(Vector v, int w, int h) : values(std::move(v)), width(w), height(h) {
    if (values.size() != static_cast<Index>(w) * h || w <= 0 || h <= 0)
      throw ContractError("Frame: values size does not match width*height");
  }

  Index size() const { return values.size(); }
  double& at(int col, int row) { return values[static_cast<Index>(row) * width + col]; }
  double at(int col, int row) const { return values[static_cast<Index>(row) * width + col]; }

  /// True when all entries are finite and inside [0,1].
  bool normalized() const {
    return values.allFinite() && values.minCoeff() >= 0.0 && values.maxCoeff() <= 1.0;
  }
};

/// Binary foreground mask, row-major, values in {0,1}.
struct Mask {
  std::vector<uint8_t> values;
  int width = 0;
  int height = 0;

  Mask() = default;
  Mask(int w, int h) : values(static_cast<size_t>(w) * h, 0), width(w), height(h) {}

  size_t size() const { return values.size(); }
  size_t count() const {
    size_t n = 0;
    for (uint8_t v : values) n += (v != 0);
    return n;
  }
};

}  // namespace omog
