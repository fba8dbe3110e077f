#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "fracop/grid_function.hpp"

namespace fracop {

// Real function of one variable `x` built from numbers, x, pi, the binary
// operators + - * / ^ (constant exponents only) and sin, cos, exp, abs.
// Supports exact symbolic differentiation.
class Expression {
 public:
  struct Node;

  Expression();  // the constant 0

  // Throws kParseError with the offending column.
  static Expression parse(std::string_view text);
  static Expression constant(double value);
  static Expression variable();

  double operator()(double x) const;
  Expression derivative() const;
  std::string to_string() const;
  bool is_constant() const;

  // Samples the expression and its first `derivative_order` derivatives.
  GridFunction sample(const Grid& grid, int derivative_order = 0) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);
  friend Expression pow(const Expression& base, double exponent);
  friend Expression sin(const Expression& a);
  friend Expression cos(const Expression& a);
  friend Expression exp(const Expression& a);
  friend Expression abs(const Expression& a);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace fracop
