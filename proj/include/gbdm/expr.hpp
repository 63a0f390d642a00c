#ifndef GBDM_EXPR_HPP
#define GBDM_EXPR_HPP

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>

namespace gbdm {

// Small closed expression language for symbols in configuration files:
// numbers, + - * / ^, parentheses, |...|, variables, the constants
// pi / i / e, and the functions sin cos tan exp log sqrt abs conj re im
// sinh cosh tanh atan2-free atan. No general code execution.
class Expr {
 public:
  using Env = std::map<std::string, double>;

  static Expr parse(const std::string& text);  // throws ExprError

  std::complex<double> eval(const Env& env) const;
  const std::set<std::string>& variables() const;
  const std::string& text() const;

  Expr() = default;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::shared_ptr<std::set<std::string>> vars_;
  std::string text_;
};

struct ExprError : std::runtime_error {
  explicit ExprError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gbdm

#endif
