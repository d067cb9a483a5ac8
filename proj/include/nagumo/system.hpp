#ifndef NAGUMO_SYSTEM_HPP
#define NAGUMO_SYSTEM_HPP

#include <functional>
#include <string>

#include "nagumo/numerics.hpp"

namespace nagumo {

using VectorField = std::function<Vector(double t, const Vector& x)>;

// x' = A x, or x' = f(t, x) for an opaque f.
class DynamicalSystem {
 public:
  static DynamicalSystem linear(Matrix a);
  static DynamicalSystem general(Eigen::Index dim, VectorField f, std::string label = {});

  bool is_linear() const { return linear_; }
  Eigen::Index dim() const { return dim_; }
  // Only for linear systems.
  const Matrix& matrix() const;
  const std::string& label() const { return label_; }

  Vector operator()(double t, const Vector& x) const;

 private:
  DynamicalSystem() = default;

  bool linear_ = false;
  Eigen::Index dim_ = 0;
  Matrix a_;
  VectorField f_;
  std::string label_;
};

}  // namespace nagumo

#endif  // NAGUMO_SYSTEM_HPP
