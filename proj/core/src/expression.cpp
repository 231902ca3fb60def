#include "edlab/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string_view>

namespace edlab {

namespace {

enum class Fn { Sin, Cos, Exp, Log, Sqrt, Abs, Tanh };

const std::array<std::pair<std::string_view, Fn>, 7> kFunctions = {{
    {"sin", Fn::Sin},
    {"cos", Fn::Cos},
    {"exp", Fn::Exp},
    {"log", Fn::Log},
    {"sqrt", Fn::Sqrt},
    {"abs", Fn::Abs},
    {"tanh", Fn::Tanh},
}};

std::string_view fn_name(Fn f) {
    for (const auto &[name, fn] : kFunctions)
        if (fn == f) return name;
    return "?";
}

} // namespace

struct Expression::Node {
    enum class Kind { Number, VarX, VarT, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double value = 0.0;
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    explicit Node(Kind k) : kind(k) {}
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>(Node::Kind::Number);
    n->value = v;
    return n;
}

NodePtr make_unary(Node::Kind k, NodePtr a) {
    auto n = std::make_shared<Node>(k);
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>(k);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_call(Fn f, NodePtr a) {
    auto n = std::make_shared<Node>(Node::Kind::Call);
    n->fn = f;
    n->lhs = std::move(a);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string &text) : text_(text) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input after expression", pos_);
        return e;
    }

  private:
    const std::string &text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (eat('+'))
                lhs = make_binary(Node::Kind::Add, lhs, parse_product());
            else if (eat('-'))
                lhs = make_binary(Node::Kind::Sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (eat('*'))
                lhs = make_binary(Node::Kind::Mul, lhs, parse_unary());
            else if (eat('/'))
                lhs = make_binary(Node::Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make_unary(Node::Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) return make_binary(Node::Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const char *begin = text_.c_str() + pos_;
        char *end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return make_number(v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string_view name(text_.data() + start, pos_ - start);

        if (name == "x") return std::make_shared<Node>(Node::Kind::VarX);
        if (name == "t") return std::make_shared<Node>(Node::Kind::VarT);

        for (const auto &[fname, fn] : kFunctions) {
            if (name == fname) {
                if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
                NodePtr arg = parse_sum();
                if (eat(',')) throw ParseError("functions take exactly one argument", pos_);
                if (!eat(')')) throw ParseError("expected ')'", pos_);
                return make_call(fn, arg);
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
};

double eval_node(const Node &n, double x, double t) {
    switch (n.kind) {
        case Node::Kind::Number: return n.value;
        case Node::Kind::VarX: return x;
        case Node::Kind::VarT: return t;
        case Node::Kind::Neg: return -eval_node(*n.lhs, x, t);
        case Node::Kind::Add: return eval_node(*n.lhs, x, t) + eval_node(*n.rhs, x, t);
        case Node::Kind::Sub: return eval_node(*n.lhs, x, t) - eval_node(*n.rhs, x, t);
        case Node::Kind::Mul: return eval_node(*n.lhs, x, t) * eval_node(*n.rhs, x, t);
        case Node::Kind::Div: {
            const double num = eval_node(*n.lhs, x, t);
            const double den = eval_node(*n.rhs, x, t);
            const double r = num / den;
            if (!std::isfinite(r)) throw EvalError("division produced a non-finite value");
            return r;
        }
        case Node::Kind::Pow: {
            const double base = eval_node(*n.lhs, x, t);
            const double exp = eval_node(*n.rhs, x, t);
            const double r = std::pow(base, exp);
            if (!std::isfinite(r)) throw EvalError("power produced a non-finite value");
            return r;
        }
        case Node::Kind::Call: {
            const double a = eval_node(*n.lhs, x, t);
            switch (n.fn) {
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
                case Fn::Exp: {
                    const double r = std::exp(a);
                    if (!std::isfinite(r)) throw EvalError("exp overflow");
                    return r;
                }
                case Fn::Log:
                    if (!(a > 0.0)) throw EvalError("log of a non-positive value");
                    return std::log(a);
                case Fn::Sqrt:
                    if (a < 0.0) throw EvalError("sqrt of a negative value");
                    return std::sqrt(a);
                case Fn::Abs: return std::abs(a);
                case Fn::Tanh: return std::tanh(a);
            }
            throw EvalError("unknown function");
        }
    }
    throw EvalError("malformed expression tree");
}

void print_node(const Node &n, std::ostream &os) {
    switch (n.kind) {
        case Node::Kind::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.value;
            std::string s = tmp.str();
            if (n.value < 0.0) {
                os << "(" << s << ")";
            } else {
                os << s;
            }
            return;
        }
        case Node::Kind::VarX: os << "x"; return;
        case Node::Kind::VarT: os << "t"; return;
        case Node::Kind::Neg:
            os << "(-";
            print_node(*n.lhs, os);
            os << ")";
            return;
        case Node::Kind::Add:
        case Node::Kind::Sub:
        case Node::Kind::Mul:
        case Node::Kind::Div:
        case Node::Kind::Pow: {
            const char *op = n.kind == Node::Kind::Add   ? "+"
                             : n.kind == Node::Kind::Sub ? "-"
                             : n.kind == Node::Kind::Mul ? "*"
                             : n.kind == Node::Kind::Div ? "/"
                                                         : "^";
            os << "(";
            print_node(*n.lhs, os);
            os << op;
            print_node(*n.rhs, os);
            os << ")";
            return;
        }
        case Node::Kind::Call:
            os << fn_name(n.fn) << "(";
            print_node(*n.lhs, os);
            os << ")";
            return;
    }
}

bool node_depends_on_t(const Node &n) {
    if (n.kind == Node::Kind::VarT) return true;
    if (n.lhs && node_depends_on_t(*n.lhs)) return true;
    if (n.rhs && node_depends_on_t(*n.rhs)) return true;
    return false;
}

} // namespace

Expression Expression::parse(const std::string &text) {
    Parser p(text);
    return Expression(p.run());
}

Expression Expression::constant(double value) { return Expression(make_number(value)); }

double Expression::operator()(double x, double t) const {
    if (!root_) throw EvalError("empty expression");
    return eval_node(*root_, x, t);
}

std::string Expression::str() const {
    if (!root_) return "";
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

bool Expression::depends_on_t() const { return root_ && node_depends_on_t(*root_); }

} // namespace edlab
