#pragma once

#include "qmap/error.hpp"
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmap {

/// Parse tree of a scalar expression over x0 .. x{nvars-1}.
///
/// Grammar (lowest to highest precedence):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | variable | function '(' args ')' | '(' expr ')'
/// Functions: abs, sqrt, exp, log (one argument); min, max (two or more);
/// norm2 (Euclidean norm of its arguments, or of the whole point when called
/// with none).
class ExprAst {
public:
    enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

    struct Node {
        Kind kind = Kind::Number;
        double value = 0.0;       // Number
        std::size_t index = 0;    // Variable
        std::string function;     // Call
        std::vector<Node> args;   // operands / call arguments

        friend bool operator==(const Node&, const Node&) = default;
    };

    ExprAst() = default;
    ExprAst(Node root, std::size_t nvars) : root_(std::move(root)), nvars_(nvars) {}

    std::size_t nvars() const { return nvars_; }
    const Node& root() const { return root_; }

    /// Throws EvalError when the point leaves the expression's domain or the
    /// result is not finite.
    double evaluate(std::span<const double> point) const;

    /// Canonical text: binary and unary operations fully parenthesised,
    /// literals in shortest round-trip form.
    std::string to_string() const;

    friend bool operator==(const ExprAst&, const ExprAst&) = default;

private:
    Node root_;
    std::size_t nvars_ = 0;
};

/// Throws ParseError carrying the byte offset of the failure.
ExprAst parse_expression(std::string_view source, std::size_t nvars);

}  // namespace qmap
