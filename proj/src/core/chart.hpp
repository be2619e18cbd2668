// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curv {

struct CurvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : CurvError {
  using CurvError::CurvError;
};
struct NonFiniteError : CurvError {
  using CurvError::CurvError;
};
struct SingularMetricError : CurvError {
  using CurvError::CurvError;
};
struct DegeneratePlaneError : CurvError {
  using CurvError::CurvError;
};
struct CalibrationError : CurvError {
  using CurvError::CurvError;
};
struct IndexError : CurvError {
  using CurvError::CurvError;
};
struct DimensionError : CurvError {
  using CurvError::CurvError;
};
struct ConfigError : CurvError {
  using CurvError::CurvError;
};
struct IoError : CurvError {
  using CurvError::CurvError;
};

// A point in an open chart of even dimension n >= 2.
class ChartPoint {
 public:
  explicit ChartPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    const auto n = coords_.size();
    if (n < 2 || n % 2 != 0)
      throw DimensionError("chart dimension must be even and >= 2, got " +
                           std::to_string(n));
    if (!coords_.allFinite())
      throw NonFiniteError("chart point has non-finite coordinates");
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  Eigen::VectorXd coords_;
};

}  // namespace curv
