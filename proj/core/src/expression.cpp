#include "hsconv/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <variant>

namespace hsconv {

ParseError::ParseError(const std::string& what, int column)
    : Error(what + " at column " + std::to_string(column)), column_(column) {}

struct Expression::Node {
    enum class Op { Const, Var, Alpha, Neg, Add, Sub, Mul, Div, Pow, Abs, Exp, Sqrt };
    Op op = Op::Const;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

NodePtr leaf(Op op, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    return n;
}

NodePtr branch(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) {
                n = branch(Op::Add, n, term());
            } else if (accept('-')) {
                n = branch(Op::Sub, n, term());
            } else {
                return n;
            }
        }
    }

    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) {
                n = branch(Op::Mul, n, unary());
            } else if (accept('/')) {
                n = branch(Op::Div, n, unary());
            } else {
                return n;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return branch(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return branch(Op::Pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        if (accept('(')) {
            NodePtr n = expr();
            expect(')');
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* first = s_.data() + pos_;
        const auto res = std::from_chars(first, s_.data() + s_.size(), v);
        if (res.ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(res.ptr - first);
        return leaf(Op::Const, v);
    }

    NodePtr word() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x" || name == "t") return leaf(Op::Var);
        if (name == "alpha") return leaf(Op::Alpha);
        Op op;
        if (name == "abs") {
            op = Op::Abs;
        } else if (name == "exp") {
            op = Op::Exp;
        } else if (name == "sqrt") {
            op = Op::Sqrt;
        } else {
            pos_ = start;
            fail("unknown name '" + name + "'");
        }
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return branch(op, arg);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double x, double alpha) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return x;
        case Op::Alpha: return alpha;
        case Op::Neg: return -eval(*n.lhs, x, alpha);
        case Op::Add: return eval(*n.lhs, x, alpha) + eval(*n.rhs, x, alpha);
        case Op::Sub: return eval(*n.lhs, x, alpha) - eval(*n.rhs, x, alpha);
        case Op::Mul: return eval(*n.lhs, x, alpha) * eval(*n.rhs, x, alpha);
        case Op::Div: return eval(*n.lhs, x, alpha) / eval(*n.rhs, x, alpha);
        case Op::Pow: return std::pow(eval(*n.lhs, x, alpha), eval(*n.rhs, x, alpha));
        case Op::Abs: return std::abs(eval(*n.lhs, x, alpha));
        case Op::Exp: return std::exp(eval(*n.lhs, x, alpha));
        case Op::Sqrt: return std::sqrt(eval(*n.lhs, x, alpha));
    }
    return std::nan("");
}

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(const std::string& text) {
    return Expression(text, Parser(text).parse());
}

double Expression::operator()(double x, double alpha) const { return eval(*root_, x, alpha); }

}  // namespace hsconv
