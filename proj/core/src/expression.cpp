#include "fracop/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "fracop/error.hpp"

namespace fracop {

enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow, kSin, kCos, kExp, kAbs, kSign };

struct Expression::Node {
  Op op{Op::kConst};
  double value{0.0};  // constant value, or exponent for kPow
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::kConst;
  n->value = v;
  return n;
}

NodePtr make_var() {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::kVar;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::kConst && n->value == v; }

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  // Light folding keeps derivative trees small.
  if (a->op == Op::kConst && b->op == Op::kConst) {
    switch (op) {
      case Op::kAdd: return make_const(a->value + b->value);
      case Op::kSub: return make_const(a->value - b->value);
      case Op::kMul: return make_const(a->value * b->value);
      case Op::kDiv:
        if (b->value != 0.0) return make_const(a->value / b->value);
        break;
      default: break;
    }
  }
  if (op == Op::kAdd) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
  } else if (op == Op::kSub) {
    if (is_const(b, 0.0)) return a;
  } else if (op == Op::kMul) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
  } else if (op == Op::kDiv) {
    if (is_const(a, 0.0)) return make_const(0.0);
    if (is_const(b, 1.0)) return a;
  }
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_unary(Op op, NodePtr a, double value = 0.0) {
  if (a->op == Op::kConst) {
    const double v = a->value;
    switch (op) {
      case Op::kNeg: return make_const(-v);
      case Op::kPow: return make_const(std::pow(v, value));
      case Op::kSin: return make_const(std::sin(v));
      case Op::kCos: return make_const(std::cos(v));
      case Op::kExp: return make_const(std::exp(v));
      case Op::kAbs: return make_const(std::abs(v));
      case Op::kSign: return make_const(v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0));
      default: break;
    }
  }
  if (op == Op::kPow) {
    if (value == 0.0) return make_const(1.0);
    if (value == 1.0) return a;
  }
  if (op == Op::kNeg && a->op == Op::kNeg) return a->lhs;
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->value = value;
  n->lhs = std::move(a);
  return n;
}

double evaluate(const Expression::Node& n, double x) {
  switch (n.op) {
    case Op::kConst: return n.value;
    case Op::kVar: return x;
    case Op::kAdd: return evaluate(*n.lhs, x) + evaluate(*n.rhs, x);
    case Op::kSub: return evaluate(*n.lhs, x) - evaluate(*n.rhs, x);
    case Op::kMul: return evaluate(*n.lhs, x) * evaluate(*n.rhs, x);
    case Op::kDiv: return evaluate(*n.lhs, x) / evaluate(*n.rhs, x);
    case Op::kNeg: return -evaluate(*n.lhs, x);
    case Op::kPow: return std::pow(evaluate(*n.lhs, x), n.value);
    case Op::kSin: return std::sin(evaluate(*n.lhs, x));
    case Op::kCos: return std::cos(evaluate(*n.lhs, x));
    case Op::kExp: return std::exp(evaluate(*n.lhs, x));
    case Op::kAbs: return std::abs(evaluate(*n.lhs, x));
    case Op::kSign: {
      const double v = evaluate(*n.lhs, x);
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
  }
  return 0.0;
}

NodePtr differentiate(const NodePtr& n) {
  switch (n->op) {
    case Op::kConst: return make_const(0.0);
    case Op::kVar: return make_const(1.0);
    case Op::kAdd: return make_binary(Op::kAdd, differentiate(n->lhs), differentiate(n->rhs));
    case Op::kSub: return make_binary(Op::kSub, differentiate(n->lhs), differentiate(n->rhs));
    case Op::kMul:
      return make_binary(Op::kAdd, make_binary(Op::kMul, differentiate(n->lhs), n->rhs),
                         make_binary(Op::kMul, n->lhs, differentiate(n->rhs)));
    case Op::kDiv: {
      // (u'v - uv') / v^2
      auto num = make_binary(Op::kSub, make_binary(Op::kMul, differentiate(n->lhs), n->rhs),
                             make_binary(Op::kMul, n->lhs, differentiate(n->rhs)));
      return make_binary(Op::kDiv, num, make_unary(Op::kPow, n->rhs, 2.0));
    }
    case Op::kNeg: return make_unary(Op::kNeg, differentiate(n->lhs));
    case Op::kPow:
      return make_binary(Op::kMul,
                         make_binary(Op::kMul, make_const(n->value),
                                     make_unary(Op::kPow, n->lhs, n->value - 1.0)),
                         differentiate(n->lhs));
    case Op::kSin:
      return make_binary(Op::kMul, make_unary(Op::kCos, n->lhs), differentiate(n->lhs));
    case Op::kCos:
      return make_unary(Op::kNeg,
                        make_binary(Op::kMul, make_unary(Op::kSin, n->lhs), differentiate(n->lhs)));
    case Op::kExp: return make_binary(Op::kMul, n, differentiate(n->lhs));
    case Op::kAbs:
      return make_binary(Op::kMul, make_unary(Op::kSign, n->lhs), differentiate(n->lhs));
    case Op::kSign: return make_const(0.0);  // a.e.
  }
  return make_const(0.0);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Expression::Node& n) {
  switch (n.op) {
    case Op::kConst: return n.value < 0.0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
    case Op::kVar: return "x";
    case Op::kAdd: return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Op::kSub: return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
    case Op::kMul: return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
    case Op::kDiv: return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
    case Op::kNeg: return "(-" + render(*n.lhs) + ")";
    case Op::kPow: return "(" + render(*n.lhs) + " ^ " + format_number(n.value) + ")";
    case Op::kSin: return "sin(" + render(*n.lhs) + ")";
    case Op::kCos: return "cos(" + render(*n.lhs) + ")";
    case Op::kExp: return "exp(" + render(*n.lhs) + ")";
    case Op::kAbs: return "abs(" + render(*n.lhs) + ")";
    case Op::kSign: return "sign(" + render(*n.lhs) + ")";
  }
  return "?";
}

bool depends_on_x(const Expression::Node& n) {
  if (n.op == Op::kVar) return true;
  if (n.lhs && depends_on_x(*n.lhs)) return true;
  if (n.rhs && depends_on_x(*n.rhs)) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError, "expression '" + std::string(text_) + "': " + what +
                                            " at column " + std::to_string(pos_ + 1));
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

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Op::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Op::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Op::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Op::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Op::kNeg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      NodePtr exponent = unary();
      if (depends_on_x(*exponent)) {
        pos_ = at;
        fail("exponent must not depend on x");
      }
      return make_unary(Op::kPow, base, evaluate(*exponent, 0.0));
    }
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string name(text_.substr(pos_, end - pos_));
      const std::size_t at = pos_;
      pos_ = end;
      if (name == "x") return make_var();
      if (name == "pi") return make_const(std::numbers::pi);
      Op op;
      if (name == "sin") {
        op = Op::kSin;
      } else if (name == "cos") {
        op = Op::kCos;
      } else if (name == "exp") {
        op = Op::kExp;
      } else if (name == "abs") {
        op = Op::kAbs;
      } else {
        pos_ = at;
        fail("unknown identifier '" + name + "'");
      }
      if (!accept('(')) fail("expected '('");
      NodePtr arg = expression();
      if (!accept(')')) fail("expected ')'");
      return make_unary(op, arg);
    }
    if (accept('(')) {
      NodePtr e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected character");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return make_const(v);
  }

  std::string_view text_;
  std::size_t pos_{0};
};

}  // namespace

Expression::Expression() : node_(make_const(0.0)) {}

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }
Expression Expression::constant(double value) { return Expression(make_const(value)); }
Expression Expression::variable() { return Expression(make_var()); }

double Expression::operator()(double x) const { return evaluate(*node_, x); }
Expression Expression::derivative() const { return Expression(differentiate(node_)); }
std::string Expression::to_string() const { return render(*node_); }
bool Expression::is_constant() const { return !depends_on_x(*node_); }

GridFunction Expression::sample(const Grid& grid, int derivative_order) const {
  if (derivative_order < 0 || derivative_order > kMaxDerivativeOrder) {
    throw Error(ErrorCode::kOrderTooHigh, "derivative order must lie in [0, 4]");
  }
  std::vector<ScalarFn> derivs;
  Expression d = *this;
  for (int r = 0; r < derivative_order; ++r) {
    d = d.derivative();
    derivs.emplace_back([d](double x) { return d(x); });
  }
  const Expression self = *this;
  return GridFunction::sample(grid, [self](double x) { return self(x); }, derivs);
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::kAdd, a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::kSub, a.node_, b.node_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::kMul, a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_binary(Op::kDiv, a.node_, b.node_));
}
Expression operator-(const Expression& a) { return Expression(make_unary(Op::kNeg, a.node_)); }
Expression pow(const Expression& base, double exponent) {
  return Expression(make_unary(Op::kPow, base.node_, exponent));
}
Expression sin(const Expression& a) { return Expression(make_unary(Op::kSin, a.node_)); }
Expression cos(const Expression& a) { return Expression(make_unary(Op::kCos, a.node_)); }
Expression exp(const Expression& a) { return Expression(make_unary(Op::kExp, a.node_)); }
Expression abs(const Expression& a) { return Expression(make_unary(Op::kAbs, a.node_)); }

}  // namespace fracop
