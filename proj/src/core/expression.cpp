// SPDX-License-Identifier: Apache-2.0
#include "core/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

namespace curv {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual Dual eval(std::span<const Dual> x) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct NumberNode : Node {
  double v;
  explicit NumberNode(double value) : v(value) {}
  Dual eval(std::span<const Dual>) const override { return Dual(v); }
};

struct VarNode : Node {
  int idx;
  explicit VarNode(int i) : idx(i) {}
  Dual eval(std::span<const Dual> x) const override { return x[idx]; }
};

struct UnaryNode : Node {
  char op;  // '-' only
  NodePtr a;
  UnaryNode(char o, NodePtr arg) : op(o), a(std::move(arg)) {}
  Dual eval(std::span<const Dual> x) const override { return -a->eval(x); }
};

struct BinaryNode : Node {
  char op;
  NodePtr a, b;
  BinaryNode(char o, NodePtr lhs, NodePtr rhs)
      : op(o), a(std::move(lhs)), b(std::move(rhs)) {}
  Dual eval(std::span<const Dual> x) const override {
    const Dual u = a->eval(x);
    const Dual v = b->eval(x);
    switch (op) {
      case '+': return u + v;
      case '-': return u - v;
      case '*': return u * v;
      case '/': return u / v;
      default:  return pow(u, v.f);  // '^', exponent must be constant-valued
    }
  }
};

struct CallNode : Node {
  std::string name;
  NodePtr a;
  CallNode(std::string fn, NodePtr arg) : name(std::move(fn)), a(std::move(arg)) {}
  Dual eval(std::span<const Dual> x) const override {
    const Dual u = a->eval(x);
    if (name == "sin") return sin(u);
    if (name == "cos") return cos(u);
    if (name == "tan") return tan(u);
    if (name == "exp") return exp(u);
    if (name == "log") return log(u);
    return sqrt(u);
  }
};

class Parser {
 public:
  Parser(const std::string& text, int dim) : s_(text), dim_(dim) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ConfigError("trailing input in expression: '" + s_.substr(pos_) + "'");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        e = std::make_shared<BinaryNode>('+', e, term());
      else if (accept('-'))
        e = std::make_shared<BinaryNode>('-', e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      skip_ws();
      if (accept('*'))
        e = std::make_shared<BinaryNode>('*', e, factor());
      else if (accept('/'))
        e = std::make_shared<BinaryNode>('/', e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    skip_ws();
    if (accept('-')) return std::make_shared<UnaryNode>('-', factor());
    NodePtr base = primary();
    skip_ws();
    if (accept('^')) return std::make_shared<BinaryNode>('^', base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ConfigError("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    throw ConfigError(std::string("unexpected character '") + c + "' in expression");
  }

  NodePtr number() {
    size_t used = 0;
    const double v = std::stod(s_.substr(pos_), &used);
    pos_ += used;
    return std::make_shared<NumberNode>(v);
  }

  NodePtr ident() {
    const size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "pi") return std::make_shared<NumberNode>(M_PI);
    if (name.size() >= 2 && name[0] == 'x') {
      const int idx = std::atoi(name.c_str() + 1);
      if (idx < 1 || idx > dim_)
        throw ConfigError("coordinate " + name + " out of range for dim " +
                          std::to_string(dim_));
      return std::make_shared<VarNode>(idx - 1);
    }
    if (name == "sin" || name == "cos" || name == "tan" || name == "exp" ||
        name == "log" || name == "sqrt") {
      skip_ws();
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return std::make_shared<CallNode>(name, arg);
    }
    throw ConfigError("unknown identifier '" + name + "' in expression");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ConfigError(std::string("expected '") + c + "' in expression");
  }

  const std::string& s_;
  int dim_;
  size_t pos_{0};
};

}  // namespace

ScalarField parse_expression(const std::string& text, int dim) {
  Parser parser(text, dim);
  NodePtr root = parser.parse();
  return {[root](std::span<const Dual> x) { return root->eval(x); }, nullptr};
}

}  // namespace curv
