#ifndef NAGUMO_EXPRESSION_HPP
#define NAGUMO_EXPRESSION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "nagumo/numerics.hpp"
#include "nagumo/system.hpp"

namespace nagumo {

// Arithmetic over x1..xn and t:
//   + - * / ^, unary minus, parentheses, literals (1, 2.5, 1e-3),
//   sin cos exp tanh.
// '^' is right-associative and binds tighter than unary minus.
class Expression {
 public:
  // ParseError with the character offset on malformed input or a
  // variable index above `num_vars`.
  static Expression parse(std::string_view text, int num_vars);

  double eval(double t, const Vector& x) const;
  const std::string& text() const { return text_; }

 private:
  enum class Op { Const, Var, Time, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Tanh };
  struct Node {
    Op op = Op::Const;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };
  friend class ExpressionParser;

  double eval_node(int i, double t, const Vector& x) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string text_;
};

// A general system with one formula per coordinate.
DynamicalSystem expression_system(const std::vector<std::string>& formulas);

}  // namespace nagumo

#endif  // NAGUMO_EXPRESSION_HPP
