#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vofde/error.hpp"

namespace vofde::expr {

/// Syntax error at a byte offset into the source text.
class ParseError : public ConfigError {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation failure: division by zero, invalid power, non-finite result.
class EvalError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, sqrt, abs, ellipk, dn, ml1 };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Variable {
    char name;  // 'x' or 't'
};
struct Negate {
    NodePtr operand;
};
struct Binary {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};
struct Call {
    Function function;
    std::vector<NodePtr> args;
};

struct Node {
    std::variant<Number, Variable, Negate, Binary, Call> value;
};

bool operator==(const Node& a, const Node& b);

/// Immutable parsed expression in the variables x and t.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?        right-associative; -x^2 = -(x^2)
///   primary := number | 'x' | 't' | 'pi' | 'e' | name '(' args ')' | '(' sum ')'
/// Functions: sin cos exp sqrt abs ellipk (1 argument), dn(u, m), ml1(beta, z).
class Expr {
public:
    static Expr parse(std::string_view source);

    double evaluate(double x, double t) const;
    double operator()(double x, double t) const { return evaluate(x, t); }

    /// Whether the variable ('x' or 't') appears anywhere in the tree.
    bool uses(char variable) const;

    /// Fully parenthesized form with 17-digit literals; parses back to an
    /// equal tree.
    std::string print() const;

    const Node& root() const noexcept { return *root_; }

    friend bool operator==(const Expr& a, const Expr& b) { return *a.root_ == *b.root_; }

private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

inline Expr parse(std::string_view source) { return Expr::parse(source); }
inline double evaluate(const Expr& e, double x, double t) { return e.evaluate(x, t); }

}  // namespace vofde::expr
