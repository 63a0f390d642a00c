#include "gbdm/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gbdm {

using cplx = std::complex<double>;

struct Expr::Node {
  enum class Kind { Num, Var, Unary, Binary, Call, Abs } kind;
  double num = 0.0;
  bool num_imag = false;
  std::string name;
  char op = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  std::set<std::string>* vars;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ExprError("expression error at position " + std::to_string(pos) +
                    ": " + msg + " in \"" + s + "\"");
  }

  NodePtr make_num(double v, bool imag = false) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Num;
    n->num = v;
    n->num_imag = imag;
    return n;
  }

  NodePtr parse_expr() {
    auto left = parse_term();
    for (;;) {
      skip();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        char op = s[pos++];
        auto right = parse_term();
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Binary;
        n->op = op;
        n->a = left;
        n->b = right;
        left = n;
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    auto left = parse_unary();
    for (;;) {
      skip();
      if (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
        char op = s[pos++];
        auto right = parse_unary();
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Binary;
        n->op = op;
        n->a = left;
        n->b = right;
        left = n;
      } else {
        return left;
      }
    }
  }

  NodePtr parse_unary() {
    skip();
    if (eat('-')) {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Unary;
      n->op = '-';
      n->a = parse_unary();
      return n;
    }
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    skip();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      auto expn = parse_unary();
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Binary;
      n->op = '^';
      n->a = base;
      n->b = expn;
      return n;
    }
    return base;
  }

  NodePtr parse_atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      auto e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '|') {
      ++pos;
      auto e = parse_expr();
      if (!eat('|')) fail("expected closing '|'");
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Abs;
      n->a = e;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s.substr(pos), &used);
      pos += used;
      return make_num(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_' || s[pos] == '\''))
        ++pos;
      std::string name = s.substr(start, pos - start);
      skip();
      if (pos < s.size() && s[pos] == '(') {
        ++pos;
        auto arg = parse_expr();
        if (!eat(')')) fail("expected ')' after function argument");
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Call;
        n->name = name;
        n->a = arg;
        return n;
      }
      if (name == "pi") return make_num(M_PI);
      if (name == "e") return make_num(M_E);
      if (name == "i") return make_num(1.0, true);
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Var;
      n->name = name;
      vars->insert(name);
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

cplx eval_node(const Expr::Node& n, const Expr::Env& env) {
  using K = Expr::Node::Kind;
  switch (n.kind) {
    case K::Num:
      return n.num_imag ? cplx(0.0, n.num) : cplx(n.num);
    case K::Var: {
      auto it = env.find(n.name);
      if (it == env.end())
        throw ExprError("unbound variable '" + n.name + "'");
      return cplx(it->second);
    }
    case K::Unary:
      return -eval_node(*n.a, env);
    case K::Abs:
      return cplx(std::abs(eval_node(*n.a, env)));
    case K::Binary: {
      const cplx a = eval_node(*n.a, env);
      const cplx b = eval_node(*n.b, env);
      switch (n.op) {
        case '+':
          return a + b;
        case '-':
          return a - b;
        case '*':
          return a * b;
        case '/':
          return a / b;
        case '^': {
          if (b.imag() == 0.0 && b.real() == std::floor(b.real()) &&
              std::abs(b.real()) <= 64) {
            int e = static_cast<int>(b.real());
            cplx r(1.0);
            cplx base = e >= 0 ? a : cplx(1.0) / a;
            for (int i = 0; i < std::abs(e); ++i) r *= base;
            return r;
          }
          return std::pow(a, b);
        }
      }
      throw ExprError("bad operator");
    }
    case K::Call: {
      const cplx a = eval_node(*n.a, env);
      if (n.name == "sin") return std::sin(a);
      if (n.name == "cos") return std::cos(a);
      if (n.name == "tan") return std::tan(a);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "log") return std::log(a);
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "abs") return cplx(std::abs(a));
      if (n.name == "conj") return std::conj(a);
      if (n.name == "re") return cplx(a.real());
      if (n.name == "im") return cplx(a.imag());
      if (n.name == "sinh") return std::sinh(a);
      if (n.name == "cosh") return std::cosh(a);
      if (n.name == "tanh") return std::tanh(a);
      if (n.name == "atan") return std::atan(a);
      throw ExprError("unknown function '" + n.name + "'");
    }
  }
  throw ExprError("corrupt expression tree");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  e.vars_ = std::make_shared<std::set<std::string>>();
  Parser p{text, 0, e.vars_.get()};
  e.root_ = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

cplx Expr::eval(const Env& env) const {
  if (!root_) throw ExprError("empty expression");
  return eval_node(*root_, env);
}

const std::set<std::string>& Expr::variables() const {
  static const std::set<std::string> empty;
  return vars_ ? *vars_ : empty;
}

const std::string& Expr::text() const { return text_; }

}  // namespace gbdm
