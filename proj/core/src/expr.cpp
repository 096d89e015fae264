#include "qmap/expr.hpp"

#include "qmap/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace qmap {
namespace {

struct FunctionInfo {
    std::string_view name;
    std::size_t min_args;
    std::size_t max_args;
};

constexpr std::size_t kVariadic = static_cast<std::size_t>(-1);
constexpr std::array<FunctionInfo, 7> kFunctions{{
    {"abs", 1, 1}, {"sqrt", 1, 1}, {"exp", 1, 1}, {"log", 1, 1},
    {"min", 2, kVariadic}, {"max", 2, kVariadic}, {"norm2", 0, kVariadic},
}};

const FunctionInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

class Parser {
public:
    Parser(std::string_view src, std::size_t nvars) : src_(src), nvars_(nvars) {}

    ExprAst::Node parse() {
        ExprAst::Node n = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
        return n;
    }

private:
    using Node = ExprAst::Node;
    using Kind = ExprAst::Kind;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static Node binary(Kind k, Node a, Node b) {
        Node n;
        n.kind = k;
        n.args.push_back(std::move(a));
        n.args.push_back(std::move(b));
        return n;
    }

    Node expr() {
        Node lhs = term();
        for (;;) {
            if (accept('+')) lhs = binary(Kind::Add, std::move(lhs), term());
            else if (accept('-')) lhs = binary(Kind::Sub, std::move(lhs), term());
            else return lhs;
        }
    }
    Node term() {
        Node lhs = unary();
        for (;;) {
            if (accept('*')) lhs = binary(Kind::Mul, std::move(lhs), unary());
            else if (accept('/')) lhs = binary(Kind::Div, std::move(lhs), unary());
            else return lhs;
        }
    }
    Node unary() {
        if (accept('-')) {
            Node n;
            n.kind = Kind::Negate;
            n.args.push_back(unary());
            return n;
        }
        return power();
    }
    Node power() {
        Node base = primary();
        if (accept('^')) return binary(Kind::Pow, std::move(base), unary());
        return base;
    }
    Node primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Node inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    Node number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t k = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++k;
            return k;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw ParseError("malformed exponent", start);
        }
        Node n;
        n.kind = Kind::Number;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, n.value);
        if (res.ec != std::errc()) throw ParseError("malformed number", start);
        return n;
    }
    Node identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            const FunctionInfo* fn = find_function(name);
            if (!fn) throw ParseError("unknown function '" + std::string(name) + "'", start);
            ++pos_;
            Node call;
            call.kind = Kind::Call;
            call.function = std::string(name);
            if (!accept(')')) {
                do call.args.push_back(expr());
                while (accept(','));
                if (!accept(')')) throw ParseError("expected ')' or ','", pos_);
            }
            if (call.args.size() < fn->min_args || call.args.size() > fn->max_args)
                throw ParseError("wrong number of arguments for '" + std::string(name) + "'", start);
            return call;
        }
        if (name.size() >= 2 && name[0] == 'x') {
            std::size_t index = 0;
            const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
            if (res.ec == std::errc() && res.ptr == name.data() + name.size() && index < nvars_ &&
                (name.size() == 2 || name[1] != '0')) {
                Node v;
                v.kind = Kind::Variable;
                v.index = index;
                return v;
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
    return v;
}

double eval(const ExprAst::Node& n, std::span<const double> x) {
    using Kind = ExprAst::Kind;
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: return x[n.index];
        case Kind::Negate: return -eval(n.args[0], x);
        case Kind::Add: return checked(eval(n.args[0], x) + eval(n.args[1], x), "'+'");
        case Kind::Sub: return checked(eval(n.args[0], x) - eval(n.args[1], x), "'-'");
        case Kind::Mul: return checked(eval(n.args[0], x) * eval(n.args[1], x), "'*'");
        case Kind::Div: {
            const double den = eval(n.args[1], x);
            if (den == 0.0) throw EvalError("division by zero");
            return checked(eval(n.args[0], x) / den, "'/'");
        }
        case Kind::Pow: {
            const double b = eval(n.args[0], x), e = eval(n.args[1], x);
            if (b < 0.0 && e != std::floor(e)) throw EvalError("negative base with non-integer exponent");
            if (b == 0.0 && e < 0.0) throw EvalError("zero raised to a negative power");
            return checked(std::pow(b, e), "'^'");
        }
        case Kind::Call: break;
    }
    const std::string& f = n.function;
    if (f == "abs") return std::abs(eval(n.args[0], x));
    if (f == "sqrt") {
        const double a = eval(n.args[0], x);
        if (a < 0.0) throw EvalError("sqrt of a negative value");
        return std::sqrt(a);
    }
    if (f == "exp") return checked(std::exp(eval(n.args[0], x)), "exp");
    if (f == "log") {
        const double a = eval(n.args[0], x);
        if (!(a > 0.0)) throw EvalError("log of a non-positive value");
        return std::log(a);
    }
    if (f == "min" || f == "max") {
        double acc = eval(n.args[0], x);
        for (std::size_t k = 1; k < n.args.size(); ++k) {
            const double v = eval(n.args[k], x);
            acc = (f == "min") ? std::min(acc, v) : std::max(acc, v);
        }
        return acc;
    }
    // norm2
    double sum = 0.0;
    if (n.args.empty()) {
        for (double v : x) sum += v * v;
    } else {
        for (const auto& a : n.args) {
            const double v = eval(a, x);
            sum += v * v;
        }
    }
    return checked(std::sqrt(sum), "norm2");
}

void print(const ExprAst::Node& n, std::string& out) {
    using Kind = ExprAst::Kind;
    auto bin = [&](const char* op) {
        out += '(';
        print(n.args[0], out);
        out += op;
        print(n.args[1], out);
        out += ')';
    };
    switch (n.kind) {
        case Kind::Number: {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
            out.append(buf, res.ptr);
            return;
        }
        case Kind::Variable: out += "x" + std::to_string(n.index); return;
        case Kind::Negate:
            out += "(-";
            print(n.args[0], out);
            out += ')';
            return;
        case Kind::Add: bin(" + "); return;
        case Kind::Sub: bin(" - "); return;
        case Kind::Mul: bin(" * "); return;
        case Kind::Div: bin(" / "); return;
        case Kind::Pow: bin("^"); return;
        case Kind::Call:
            out += n.function + '(';
            for (std::size_t k = 0; k < n.args.size(); ++k) {
                if (k) out += ", ";
                print(n.args[k], out);
            }
            out += ')';
            return;
    }
}

}  // namespace

ExprAst parse_expression(std::string_view source, std::size_t nvars) {
    return ExprAst(Parser(source, nvars).parse(), nvars);
}

double ExprAst::evaluate(std::span<const double> point) const {
    if (point.size() != nvars_) throw EvalError("point dimension does not match expression");
    return eval(root_, point);
}

std::string ExprAst::to_string() const {
    std::string out;
    print(root_, out);
    return out;
}

}  // namespace qmap
