#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdelab {

class ExpressionError : public std::runtime_error {
public:
    ExpressionError(const std::string& message, std::size_t column)
        : std::runtime_error(message), column_(column) {}
    /// 1-based column in the parsed text.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// Arithmetic expression in one variable x:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := primary ('^' unary)?
///   primary := number | 'x' | '(' expr ')'
/// '^' is right associative and binds tighter than unary minus.
class Expression {
public:
    static Expression parse(std::string_view text);
    static Expression constant(double v);

    double operator()(double x) const;
    /// Symbolic d/dx. Exponents must not depend on x.
    Expression derivative() const;
    std::string str() const;
    bool depends_on_x() const;

    struct Node;

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

}  // namespace sdelab
