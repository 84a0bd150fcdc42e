#pragma once

// Arithmetic expressions in one variable, used for user-supplied functions,
// phi maps, h functions and densities in configs.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right associative
//   atom   := number | 'x' | 't' | 'alpha' | call | '(' expr ')'
//   call   := ('abs' | 'exp' | 'sqrt') '(' expr ')'
//
// `x` and `t` both name the variable. Evaluation is a tree walk; nothing is
// executed beyond these operators.

#include <memory>
#include <string>

#include "hsconv/errors.hpp"

namespace hsconv {

class ParseError : public Error {
public:
    /// `column` is 1-based within the expression text.
    ParseError(const std::string& what, int column);
    int column() const noexcept { return column_; }

private:
    int column_;
};

class Expression {
public:
    struct Node;

    /// Throws ParseError.
    static Expression parse(const std::string& text);

    const std::string& text() const noexcept { return text_; }
    /// Value at variable = x with the `alpha` constant bound.
    double operator()(double x, double alpha = 1.0) const;

private:
    Expression(std::string text, std::shared_ptr<const Node> root);

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace hsconv
