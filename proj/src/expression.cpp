// Small recursive-descent parser for user-supplied coefficient functions.

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>

#include "pljacobi/oracle.hpp"

namespace pljacobi {

namespace {

struct Node {
  enum class Op { Const, X, Y, Neg, Add, Sub, Mul, Div, Pow, Call } op = Op::Const;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double x, double y) const {
    switch (op) {
      case Op::Const: return value;
      case Op::X: return x;
      case Op::Y: return y;
      case Op::Neg: return -lhs->eval(x, y);
      case Op::Add: return lhs->eval(x, y) + rhs->eval(x, y);
      case Op::Sub: return lhs->eval(x, y) - rhs->eval(x, y);
      case Op::Mul: return lhs->eval(x, y) * rhs->eval(x, y);
      case Op::Div: return lhs->eval(x, y) / rhs->eval(x, y);
      case Op::Pow: return std::pow(lhs->eval(x, y), rhs->eval(x, y));
      case Op::Call: return fn(lhs->eval(x, y));
    }
    return 0.0;
  }
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::BadArgument,
                "cannot parse expression '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Node::Op::Add, lhs, term());
      else if (eat('-')) lhs = make(Node::Op::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Node::Op::Mul, lhs, unary());
      else if (eat('/')) lhs = make(Node::Op::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Node::Op::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Node::Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodePtr inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "x") return make(Node::Op::X);
      if (name == "y") return make(Node::Op::Y);
      if (name == "pi") {
        auto n = std::make_shared<Node>();
        n->value = std::numbers::pi;
        return n;
      }
      double (*fn)(double) = nullptr;
      if (name == "sin") fn = [](double v) { return std::sin(v); };
      else if (name == "cos") fn = [](double v) { return std::cos(v); };
      else if (name == "tan") fn = [](double v) { return std::tan(v); };
      else if (name == "exp") fn = [](double v) { return std::exp(v); };
      else if (name == "log") fn = [](double v) { return std::log(v); };
      else if (name == "sqrt") fn = [](double v) { return std::sqrt(v); };
      else if (name == "abs") fn = [](double v) { return std::abs(v); };
      else fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Call;
      n->fn = fn;
      n->lhs = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

PlaneFn parse_expression(const std::string& text) {
  NodePtr root = Parser(text).parse();
  return [root](double x, double y) { return root->eval(x, y); };
}

}  // namespace pljacobi
