#include "nagumo/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>

#include "nagumo/error.hpp"

namespace nagumo {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, int num_vars, Expression& out)
      : text_(text), num_vars_(num_vars), out_(out) {}

  int run() {
    const int root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    out_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = add(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = add(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = add(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = add(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept('-')) return add(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (accept('^')) return add(Op::Pow, base, unary());
    return base;
  }

  int primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const auto [end, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc() || end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    return add(Op::Const, -1, -1, value);
  }

  int name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word == "t") return add(Op::Time);
    if (word.size() > 1 && word[0] == 'x' && word.find_first_not_of("0123456789", 1) == word.npos) {
      int index = 0;
      std::from_chars(word.data() + 1, word.data() + word.size(), index);
      if (index < 1 || index > num_vars_) {
        pos_ = start;
        fail("variable " + std::string(word) + " outside x1..x" + std::to_string(num_vars_));
      }
      return add(Op::Var, -1, -1, static_cast<double>(index - 1));
    }
    Op op;
    if (word == "sin") {
      op = Op::Sin;
    } else if (word == "cos") {
      op = Op::Cos;
    } else if (word == "exp") {
      op = Op::Exp;
    } else if (word == "tanh") {
      op = Op::Tanh;
    } else {
      pos_ = start;
      fail("unknown name '" + std::string(word) + "'");
    }
    if (!accept('(')) fail("expected '(' after " + std::string(word));
    const int arg = expr();
    if (!accept(')')) fail("expected ')'");
    return add(op, arg);
  }

  std::string_view text_;
  int num_vars_;
  Expression& out_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, int num_vars) {
  Expression e;
  e.text_ = std::string(text);
  ExpressionParser parser(e.text_, num_vars, e);
  e.root_ = parser.run();
  return e;
}

double Expression::eval(double t, const Vector& x) const { return eval_node(root_, t, x); }

double Expression::eval_node(int i, double t, const Vector& x) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x(static_cast<Eigen::Index>(n.value));
    case Op::Time: return t;
    case Op::Neg: return -eval_node(n.lhs, t, x);
    case Op::Add: return eval_node(n.lhs, t, x) + eval_node(n.rhs, t, x);
    case Op::Sub: return eval_node(n.lhs, t, x) - eval_node(n.rhs, t, x);
    case Op::Mul: return eval_node(n.lhs, t, x) * eval_node(n.rhs, t, x);
    case Op::Div: return eval_node(n.lhs, t, x) / eval_node(n.rhs, t, x);
    case Op::Pow: return std::pow(eval_node(n.lhs, t, x), eval_node(n.rhs, t, x));
    case Op::Sin: return std::sin(eval_node(n.lhs, t, x));
    case Op::Cos: return std::cos(eval_node(n.lhs, t, x));
    case Op::Exp: return std::exp(eval_node(n.lhs, t, x));
    case Op::Tanh: return std::tanh(eval_node(n.lhs, t, x));
  }
  return 0.0;
}

DynamicalSystem expression_system(const std::vector<std::string>& formulas) {
  if (formulas.empty()) throw Error(ErrorCode::InvalidArgument, "no formulas");
  const int n = static_cast<int>(formulas.size());
  auto parsed = std::make_shared<std::vector<Expression>>();
  for (const std::string& f : formulas) parsed->push_back(Expression::parse(f, n));
  std::string label = "expression";
  return DynamicalSystem::general(
      n,
      [parsed](double t, const Vector& x) {
        Vector y(x.size());
        for (std::size_t k = 0; k < parsed->size(); ++k) {
          y(static_cast<Eigen::Index>(k)) = (*parsed)[k].eval(t, x);
        }
        return y;
      },
      label);
}

}  // namespace nagumo
