#pragma once

#include <memory>
#include <string>

#include "edlab/errors.hpp"

namespace edlab {

/// Arithmetic expression in the variables x and t.
///
/// Grammar (loosest to tightest binding):
///   sum     := product (('+'|'-') product)*
///   product := unary (('*'|'/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          // right-associative
///   primary := number | 'x' | 't' | fn '(' sum ')' | '(' sum ')'
/// Functions: sin cos exp log sqrt abs tanh.
///
/// Unary minus binds looser than '^', so "-x^2" is -(x^2).
class Expression {
  public:
    struct Node;

    Expression() = default;

    /// Parse from text. Throws ParseError with a byte offset on failure.
    static Expression parse(const std::string &text);

    /// Constant expression.
    static Expression constant(double value);

    /// Evaluate at (x, t). Domain errors (log of a non-positive value,
    /// sqrt of a negative value, division yielding a non-finite result)
    /// throw EvalError instead of propagating NaN.
    double operator()(double x, double t = 0.0) const;

    /// Canonical fully-parenthesized rendering; parsing it back yields an
    /// equal tree.
    std::string str() const;

    bool depends_on_t() const;
    bool is_valid() const { return root_ != nullptr; }

  private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace edlab
