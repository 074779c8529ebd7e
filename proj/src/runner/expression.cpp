#include "sdelab/runner/expression.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

namespace sdelab {

struct Expression::Node {
    enum class Kind { number, var, add, sub, mul, div, pow, neg } kind;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using Ptr = std::shared_ptr<const Node>;
using K = Node::Kind;

Ptr num(double v) { return std::make_shared<const Node>(Node{K::number, v, nullptr, nullptr}); }
Ptr var() { return std::make_shared<const Node>(Node{K::var, 0.0, nullptr, nullptr}); }

bool is_num(const Ptr& p, double v) { return p->kind == K::number && p->value == v; }

Ptr make(K k, Ptr a, Ptr b = nullptr) {
    if (a->kind == K::number && (!b || b->kind == K::number)) {
        const double x = a->value, y = b ? b->value : 0.0;
        switch (k) {
            case K::add: return num(x + y);
            case K::sub: return num(x - y);
            case K::mul: return num(x * y);
            case K::div:
                if (y != 0.0) return num(x / y);
                break;
            case K::pow: return num(std::pow(x, y));
            case K::neg: return num(-x);
            default: break;
        }
    }
    switch (k) {
        case K::add:
            if (is_num(a, 0.0)) return b;
            if (is_num(b, 0.0)) return a;
            break;
        case K::sub:
            if (is_num(b, 0.0)) return a;
            if (is_num(a, 0.0)) return make(K::neg, b);
            break;
        case K::mul:
            if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
            if (is_num(a, 1.0)) return b;
            if (is_num(b, 1.0)) return a;
            break;
        case K::div:
            if (is_num(a, 0.0)) return num(0.0);
            if (is_num(b, 1.0)) return a;
            break;
        case K::pow:
            if (is_num(b, 1.0)) return a;
            if (is_num(b, 0.0)) return num(1.0);
            break;
        default: break;
    }
    return std::make_shared<const Node>(Node{k, 0.0, std::move(a), std::move(b)});
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Ptr run() {
        Ptr e = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExpressionError("expression: " + msg + " at column " + std::to_string(pos_ + 1), pos_ + 1);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Ptr expr() {
        Ptr left = term();
        while (true) {
            if (eat('+')) left = make(K::add, left, term());
            else if (eat('-')) left = make(K::sub, left, term());
            else return left;
        }
    }
    Ptr term() {
        Ptr left = unary();
        while (true) {
            if (eat('*')) left = make(K::mul, left, unary());
            else if (eat('/')) left = make(K::div, left, unary());
            else return left;
        }
    }
    Ptr unary() {
        if (eat('-')) return make(K::neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    Ptr power() {
        Ptr base = primary();
        if (eat('^')) return make(K::pow, base, unary());
        return base;
    }
    Ptr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Ptr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 'x') {
            ++pos_;
            return var();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
            if (ec != std::errc()) fail("malformed number");
            pos_ = static_cast<std::size_t>(ptr - s_.data());
            return num(v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval(const Ptr& p, double x) {
    switch (p->kind) {
        case K::number: return p->value;
        case K::var: return x;
        case K::add: return eval(p->a, x) + eval(p->b, x);
        case K::sub: return eval(p->a, x) - eval(p->b, x);
        case K::mul: return eval(p->a, x) * eval(p->b, x);
        case K::div: return eval(p->a, x) / eval(p->b, x);
        case K::pow: return std::pow(eval(p->a, x), eval(p->b, x));
        case K::neg: return -eval(p->a, x);
    }
    return 0.0;
}

bool has_x(const Ptr& p) {
    if (!p) return false;
    return p->kind == K::var || has_x(p->a) || has_x(p->b);
}

Ptr diff(const Ptr& p) {
    switch (p->kind) {
        case K::number: return num(0.0);
        case K::var: return num(1.0);
        case K::add: return make(K::add, diff(p->a), diff(p->b));
        case K::sub: return make(K::sub, diff(p->a), diff(p->b));
        case K::mul: return make(K::add, make(K::mul, diff(p->a), p->b), make(K::mul, p->a, diff(p->b)));
        case K::div:
            return make(K::div, make(K::sub, make(K::mul, diff(p->a), p->b), make(K::mul, p->a, diff(p->b))),
                        make(K::mul, p->b, p->b));
        case K::pow: {
            if (has_x(p->b)) throw ExpressionError("expression: cannot differentiate an exponent that depends on x", 0);
            const Ptr lowered = make(K::pow, p->a, make(K::sub, p->b, num(1.0)));
            return make(K::mul, make(K::mul, p->b, lowered), diff(p->a));
        }
        case K::neg: return make(K::neg, diff(p->a));
    }
    return num(0.0);
}

void print(std::ostream& os, const Ptr& p) {
    switch (p->kind) {
        case K::number: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p->value);
            os.write(buf, ptr - buf);
            return;
        }
        case K::var: os << 'x'; return;
        case K::neg: os << "(-"; print(os, p->a); os << ')'; return;
        default: break;
    }
    const char op = p->kind == K::add ? '+' : p->kind == K::sub ? '-' : p->kind == K::mul ? '*' : p->kind == K::div ? '/' : '^';
    os << '(';
    print(os, p->a);
    os << ' ' << op << ' ';
    print(os, p->b);
    os << ')';
}

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).run()); }
Expression Expression::constant(double v) { return Expression(num(v)); }
double Expression::operator()(double x) const { return eval(root_, x); }
Expression Expression::derivative() const { return Expression(diff(root_)); }
bool Expression::depends_on_x() const { return has_x(root_); }

std::string Expression::str() const {
    std::ostringstream os;
    print(os, root_);
    return os.str();
}

}  // namespace sdelab
