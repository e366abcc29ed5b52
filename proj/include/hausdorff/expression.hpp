#pragma once

#include "hausdorff/core.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace hausdorff {

/// Small arithmetic language for densities, kernels and test functions.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Functions: exp log sin cos atan abs (one argument), min max (two or more).
/// Variables: u, x, x1..xd. In one dimension `x` is the coordinate; in
/// higher dimensions it is the Euclidean norm |x|.
class Expression {
public:
  Expression() = default;

  /// Throws parse-error "line L, column C: ..." on malformed input or an
  /// identifier outside the grammar. `max_dim` bounds the index of x1..xd.
  static Expression parse(std::string_view text, int max_dim = 8);

  double operator()(double u, const Point& x) const;
  double operator()(double u) const { return (*this)(u, Point{}); }

  /// Source text as given to parse().
  const std::string& text() const { return text_; }
  /// Fully parenthesized canonical form; parses back to the same function.
  std::string canonical() const;
  bool uses_x() const;
  bool empty() const { return !root_; }

  struct Node;

private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

} // namespace hausdorff
