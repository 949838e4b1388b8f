#include "vofde/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vofde/special.hpp"

namespace vofde::expr {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : ConfigError("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

struct FunctionInfo {
    std::string_view name;
    Function function;
    std::size_t arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions = {{
    {"sin", Function::sin, 1},
    {"cos", Function::cos, 1},
    {"exp", Function::exp, 1},
    {"sqrt", Function::sqrt, 1},
    {"abs", Function::abs, 1},
    {"ellipk", Function::ellipk, 1},
    {"dn", Function::dn, 2},
    {"ml1", Function::ml1, 2},
}};

const FunctionInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::string_view function_name(Function f) {
    for (const auto& info : kFunctions) {
        if (info.function == f) return info.name;
    }
    return "?";
}

NodePtr make(auto value) { return std::make_shared<const Node>(Node{std::move(value)}); }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        NodePtr e = parse_sum();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(pos_ < src_.size() ? "expected '" + std::string(1, c) + "'"
                                    : "expected '" + std::string(1, c) + "' before end of input");
        }
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        while (true) {
            if (accept('+')) {
                lhs = make(Binary{BinaryOp::add, lhs, parse_product()});
            } else if (accept('-')) {
                lhs = make(Binary{BinaryOp::sub, lhs, parse_product()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        while (true) {
            if (accept('*')) {
                lhs = make(Binary{BinaryOp::mul, lhs, parse_unary()});
            } else if (accept('/')) {
                lhs = make(Binary{BinaryOp::div, lhs, parse_unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Negate{parse_unary()});
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make(Binary{BinaryOp::pow, base, parse_unary()});
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= src_.size()) fail("expected an expression before end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) fail_at(start, "malformed number");
        // An exponent needs digits; otherwise 'e' is left for the constant.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
            fail_at(start, "number out of range");
        }
        return make(Number{value});
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x" || name == "t") return make(Variable{name[0]});
        if (name == "pi") return make(Number{std::numbers::pi});
        if (name == "e") return make(Number{std::numbers::e});

        const FunctionInfo* info = find_function(name);
        if (!info) fail_at(start, "unknown identifier '" + std::string(name) + "'");
        expect('(');
        std::vector<NodePtr> args;
        args.push_back(parse_sum());
        while (accept(',')) args.push_back(parse_sum());
        expect(')');
        if (args.size() != info->arity) {
            fail_at(start, std::string(name) + " takes " + std::to_string(info->arity) + " argument(s), got " +
                               std::to_string(args.size()));
        }
        return make(Call{info->function, std::move(args)});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
    return v;
}

double power(double base, double exponent) {
    if (base < 0.0 && exponent != std::floor(exponent)) {
        throw EvalError("negative base with non-integer exponent");
    }
    if (base == 0.0 && exponent < 0.0) {
        throw EvalError("zero raised to a negative power");
    }
    return checked(std::pow(base, exponent), "^");
}

double eval(const Node& node, double x, double t) {
    struct Visitor {
        double x;
        double t;
        double operator()(const Number& n) const { return n.value; }
        double operator()(const Variable& v) const { return v.name == 'x' ? x : t; }
        double operator()(const Negate& n) const { return -eval(*n.operand, x, t); }
        double operator()(const Binary& b) const {
            const double l = eval(*b.lhs, x, t);
            const double r = eval(*b.rhs, x, t);
            switch (b.op) {
                case BinaryOp::add: return checked(l + r, "+");
                case BinaryOp::sub: return checked(l - r, "-");
                case BinaryOp::mul: return checked(l * r, "*");
                case BinaryOp::div:
                    if (r == 0.0) throw EvalError("division by zero");
                    return checked(l / r, "/");
                case BinaryOp::pow: return power(l, r);
            }
            return 0.0;
        }
        double operator()(const Call& c) const {
            const double a = eval(*c.args[0], x, t);
            switch (c.function) {
                case Function::sin: return std::sin(a);
                case Function::cos: return std::cos(a);
                case Function::exp: return checked(std::exp(a), "exp");
                case Function::sqrt:
                    if (a < 0.0) throw EvalError("sqrt of a negative number");
                    return std::sqrt(a);
                case Function::abs: return std::abs(a);
                case Function::ellipk: return special::elliptic_K(a);
                case Function::dn: return special::jacobi_dn(a, eval(*c.args[1], x, t));
                case Function::ml1: return special::ml_e1b(a, eval(*c.args[1], x, t));
            }
            return 0.0;
        }
    };
    return std::visit(Visitor{x, t}, node.value);
}

bool uses_var(const Node& node, char var) {
    struct Visitor {
        char var;
        bool operator()(const Number&) const { return false; }
        bool operator()(const Variable& v) const { return v.name == var; }
        bool operator()(const Negate& n) const { return uses_var(*n.operand, var); }
        bool operator()(const Binary& b) const { return uses_var(*b.lhs, var) || uses_var(*b.rhs, var); }
        bool operator()(const Call& c) const {
            for (const auto& a : c.args) {
                if (uses_var(*a, var)) return true;
            }
            return false;
        }
    };
    return std::visit(Visitor{var}, node.value);
}

void print_node(const Node& node, std::ostream& os) {
    struct Visitor {
        std::ostream& os;
        void operator()(const Number& n) const { os << n.value; }
        void operator()(const Variable& v) const { os << v.name; }
        void operator()(const Negate& n) const {
            os << "(-";
            print_node(*n.operand, os);
            os << ')';
        }
        void operator()(const Binary& b) const {
            static constexpr char ops[] = {'+', '-', '*', '/', '^'};
            os << '(';
            print_node(*b.lhs, os);
            os << ops[static_cast<int>(b.op)];
            print_node(*b.rhs, os);
            os << ')';
        }
        void operator()(const Call& c) const {
            os << function_name(c.function) << '(';
            for (std::size_t i = 0; i < c.args.size(); ++i) {
                if (i) os << ',';
                print_node(*c.args[i], os);
            }
            os << ')';
        }
    };
    std::visit(Visitor{os}, node.value);
}

}  // namespace

bool operator==(const Node& a, const Node& b) {
    if (a.value.index() != b.value.index()) return false;
    struct Visitor {
        const Node& other;
        bool operator()(const Number& n) const { return n.value == std::get<Number>(other.value).value; }
        bool operator()(const Variable& v) const { return v.name == std::get<Variable>(other.value).name; }
        bool operator()(const Negate& n) const { return *n.operand == *std::get<Negate>(other.value).operand; }
        bool operator()(const Binary& x) const {
            const auto& y = std::get<Binary>(other.value);
            return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        }
        bool operator()(const Call& x) const {
            const auto& y = std::get<Call>(other.value);
            if (x.function != y.function || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
                if (!(*x.args[i] == *y.args[i])) return false;
            }
            return true;
        }
    };
    return std::visit(Visitor{b}, a.value);
}

Expr Expr::parse(std::string_view source) { return Expr(Parser(source).parse_all()); }

double Expr::evaluate(double x, double t) const { return eval(*root_, x, t); }

bool Expr::uses(char variable) const { return uses_var(*root_, variable); }

std::string Expr::print() const {
    std::ostringstream os;
    os.precision(17);
    print_node(*root_, os);
    return os.str();
}

}  // namespace vofde::expr
