#include "nagumo/system.hpp"

#include <string>

#include "nagumo/error.hpp"

namespace nagumo {

DynamicalSystem DynamicalSystem::linear(Matrix a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "system matrix must be square and nonempty, got " +
                                                  std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()));
  }
  require_finite(a, "A");
  DynamicalSystem s;
  s.linear_ = true;
  s.dim_ = a.rows();
  s.a_ = std::move(a);
  s.label_ = "linear";
  return s;
}

DynamicalSystem DynamicalSystem::general(Eigen::Index dim, VectorField f, std::string label) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "system dimension must be positive");
  if (!f) throw Error(ErrorCode::InvalidArgument, "empty vector field");
  DynamicalSystem s;
  s.dim_ = dim;
  s.f_ = std::move(f);
  s.label_ = label.empty() ? "general" : std::move(label);
  return s;
}

const Matrix& DynamicalSystem::matrix() const {
  if (!linear_) throw Error(ErrorCode::InvalidArgument, "system has no matrix");
  return a_;
}

Vector DynamicalSystem::operator()(double t, const Vector& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "state has dimension " + std::to_string(x.size()) +
                                                  ", system has " + std::to_string(dim_));
  }
  if (linear_) return a_ * x;
  Vector y = f_(t, x);
  if (y.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "vector field returned the wrong dimension");
  }
  return y;
}

}  // namespace nagumo
