/*
 * Copyright 2026 The cpdgeo Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#include <cpd/expr.hpp>
#include <cpd/error.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace cpd {

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };

enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Asinh, Atan, Asin, Acos, Exp, Ln, Sqrt, Abs, Sign };

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0;
    int var = 0;
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FnInfo {
    const char* name;
    Fn fn;
};

constexpr FnInfo kFunctions[] = {{"sin", Fn::Sin},     {"cos", Fn::Cos},   {"tan", Fn::Tan},   {"sinh", Fn::Sinh},
                                 {"cosh", Fn::Cosh},   {"tanh", Fn::Tanh}, {"asinh", Fn::Asinh}, {"atan", Fn::Atan},
                                 {"asin", Fn::Asin},   {"acos", Fn::Acos}, {"exp", Fn::Exp},   {"ln", Fn::Ln},
                                 {"log", Fn::Ln},      {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs},   {"sign", Fn::Sign}};

const char* fn_name(Fn f)
{
    for (const auto& i : kFunctions)
        if (i.fn == f)
            return i.name;
    return "?";
}

NodePtr make_const(double v)
{
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

NodePtr make_var(int i)
{
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Var;
    n->var = i;
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

double apply(Fn f, double x)
{
    switch (f) {
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Tan: return std::tan(x);
    case Fn::Sinh: return std::sinh(x);
    case Fn::Cosh: return std::cosh(x);
    case Fn::Tanh: return std::tanh(x);
    case Fn::Asinh: return std::asinh(x);
    case Fn::Atan: return std::atan(x);
    case Fn::Asin: return std::asin(x);
    case Fn::Acos: return std::acos(x);
    case Fn::Exp: return std::exp(x);
    case Fn::Ln: return std::log(x);
    case Fn::Sqrt: return std::sqrt(x);
    case Fn::Abs: return std::abs(x);
    case Fn::Sign: return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
    }
    return 0.0;
}

double eval_node(const Expr::Node& n, std::span<const double> v)
{
    switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return v[static_cast<std::size_t>(n.var)];
    case Op::Neg: return -eval_node(*n.a, v);
    case Op::Add: return eval_node(*n.a, v) + eval_node(*n.b, v);
    case Op::Sub: return eval_node(*n.a, v) - eval_node(*n.b, v);
    case Op::Mul: return eval_node(*n.a, v) * eval_node(*n.b, v);
    case Op::Div: return eval_node(*n.a, v) / eval_node(*n.b, v);
    case Op::Pow: {
        const double base = eval_node(*n.a, v);
        if (n.b->op == Op::Const && n.b->value == 2.0)
            return base * base;
        return std::pow(base, eval_node(*n.b, v));
    }
    case Op::Func: return apply(n.fn, eval_node(*n.a, v));
    }
    return 0.0;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b)
{
    if (a->op == Op::Const && b->op == Op::Const) {
        const double v = eval_node(Expr::Node{op, 0.0, 0, Fn::Sin, a, b}, {});
        return make_const(v);
    }
    switch (op) {
    case Op::Add:
        if (is_const(a, 0))
            return b;
        if (is_const(b, 0))
            return a;
        break;
    case Op::Sub:
        if (is_const(b, 0))
            return a;
        if (is_const(a, 0)) {
            auto n = std::make_shared<Expr::Node>();
            n->op = Op::Neg;
            n->a = b;
            return n;
        }
        break;
    case Op::Mul:
        if (is_const(a, 0) || is_const(b, 0))
            return make_const(0.0);
        if (is_const(a, 1))
            return b;
        if (is_const(b, 1))
            return a;
        break;
    case Op::Div:
        if (is_const(a, 0))
            return make_const(0.0);
        if (is_const(b, 1))
            return a;
        break;
    case Op::Pow:
        if (is_const(b, 0))
            return make_const(1.0);
        if (is_const(b, 1))
            return a;
        break;
    default: break;
    }
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_neg(NodePtr a)
{
    if (a->op == Op::Const)
        return make_const(-a->value);
    if (a->op == Op::Neg)
        return a->a;
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Neg;
    n->a = std::move(a);
    return n;
}

NodePtr make_fn(Fn f, NodePtr a)
{
    if (a->op == Op::Const)
        return make_const(apply(f, a->value));
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Func;
    n->fn = f;
    n->a = std::move(a);
    return n;
}

NodePtr add(NodePtr a, NodePtr b) { return make_binary(Op::Add, std::move(a), std::move(b)); }
NodePtr sub(NodePtr a, NodePtr b) { return make_binary(Op::Sub, std::move(a), std::move(b)); }
NodePtr mul(NodePtr a, NodePtr b) { return make_binary(Op::Mul, std::move(a), std::move(b)); }
NodePtr div(NodePtr a, NodePtr b) { return make_binary(Op::Div, std::move(a), std::move(b)); }
NodePtr pow(NodePtr a, NodePtr b) { return make_binary(Op::Pow, std::move(a), std::move(b)); }

NodePtr diff_node(const NodePtr& n, int var)
{
    switch (n->op) {
    case Op::Const: return make_const(0.0);
    case Op::Var: return make_const(n->var == var ? 1.0 : 0.0);
    case Op::Neg: return make_neg(diff_node(n->a, var));
    case Op::Add: return add(diff_node(n->a, var), diff_node(n->b, var));
    case Op::Sub: return sub(diff_node(n->a, var), diff_node(n->b, var));
    case Op::Mul: return add(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var)));
    case Op::Div:
        return div(sub(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var))), pow(n->b, make_const(2.0)));
    case Op::Pow: {
        const NodePtr du = diff_node(n->a, var);
        if (n->b->op == Op::Const) {
            const double c = n->b->value;
            return mul(mul(make_const(c), pow(n->a, make_const(c - 1.0))), du);
        }
        const NodePtr dv = diff_node(n->b, var);
        return mul(n, add(mul(dv, make_fn(Fn::Ln, n->a)), div(mul(n->b, du), n->a)));
    }
    case Op::Func: {
        const NodePtr& u = n->a;
        const NodePtr du = diff_node(u, var);
        if (is_const(du, 0))
            return make_const(0.0);
        NodePtr outer;
        switch (n->fn) {
        case Fn::Sin: outer = make_fn(Fn::Cos, u); break;
        case Fn::Cos: outer = make_neg(make_fn(Fn::Sin, u)); break;
        case Fn::Tan: outer = add(make_const(1.0), pow(n, make_const(2.0))); break;
        case Fn::Sinh: outer = make_fn(Fn::Cosh, u); break;
        case Fn::Cosh: outer = make_fn(Fn::Sinh, u); break;
        case Fn::Tanh: outer = sub(make_const(1.0), pow(n, make_const(2.0))); break;
        case Fn::Asinh:
            outer = div(make_const(1.0), make_fn(Fn::Sqrt, add(pow(u, make_const(2.0)), make_const(1.0))));
            break;
        case Fn::Atan: outer = div(make_const(1.0), add(make_const(1.0), pow(u, make_const(2.0)))); break;
        case Fn::Asin:
            outer = div(make_const(1.0), make_fn(Fn::Sqrt, sub(make_const(1.0), pow(u, make_const(2.0)))));
            break;
        case Fn::Acos:
            outer = div(make_const(-1.0), make_fn(Fn::Sqrt, sub(make_const(1.0), pow(u, make_const(2.0)))));
            break;
        case Fn::Exp: outer = n; break;
        case Fn::Ln: outer = div(make_const(1.0), u); break;
        case Fn::Sqrt: outer = div(make_const(0.5), n); break;
        case Fn::Abs: outer = make_fn(Fn::Sign, u); break;
        case Fn::Sign: return make_const(0.0);
        }
        return mul(outer, du);
    }
    }
    return make_const(0.0);
}

void print(std::ostream& os, const Expr::Node& n, const std::vector<std::string>* names)
{
    switch (n.op) {
    case Op::Const: os << n.value; return;
    case Op::Var: os << "x" << n.var; return;
    case Op::Neg: os << "(-"; print(os, *n.a, names); os << ")"; return;
    case Op::Func: os << fn_name(n.fn) << "("; print(os, *n.a, names); os << ")"; return;
    default: break;
    }
    const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : n.op == Op::Div ? "/" : "^";
    os << "(";
    print(os, *n.a, names);
    os << sym;
    print(os, *n.b, names);
    os << ")";
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    NodePtr run()
    {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorKind::Parse, "column " + std::to_string(pos_ + 1) + ": " + msg + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr n = term();
        for (;;) {
            if (accept('+'))
                n = add(n, term());
            else if (accept('-'))
                n = sub(n, term());
            else
                return n;
        }
    }

    NodePtr term()
    {
        NodePtr n = unary();
        for (;;) {
            if (accept('*'))
                n = mul(n, unary());
            else if (accept('/'))
                n = div(n, unary());
            else
                return n;
        }
    }

    NodePtr unary()
    {
        if (accept('-'))
            return make_neg(unary());
        if (accept('+'))
            return unary();
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^'))
            return pow(base, unary());
        return base;
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr n = expr();
            if (!accept(')'))
                fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin)
                fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return make_const(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == id)
                    return make_var(static_cast<int>(i));
            if (id == "pi")
                return make_const(std::numbers::pi);
            if (id == "e")
                return make_const(std::numbers::e);
            for (const auto& f : kFunctions) {
                if (id == f.name) {
                    if (!accept('('))
                        fail("expected '(' after " + id);
                    NodePtr arg = expr();
                    if (!accept(')'))
                        fail("expected ')'");
                    return make_fn(f.fn, arg);
                }
            }
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace

Expr::Expr() : node_(make_const(0.0)) {}

Expr Expr::parse(const std::string& text, const std::vector<std::string>& variables)
{
    return Expr(Parser(text, variables).run(), static_cast<int>(variables.size()));
}

Expr Expr::constant(double v) { return Expr(make_const(v), 0); }

Expr Expr::variable(int index, int count) { return Expr(make_var(index), count); }

double Expr::eval(std::span<const double> values) const
{
    if (values.size() < static_cast<std::size_t>(nvars_))
        throw Error(ErrorKind::Precondition, "expression needs " + std::to_string(nvars_) + " values");
    return eval_node(*node_, values);
}

Expr Expr::diff(int index) const { return Expr(diff_node(node_, index), nvars_); }

bool Expr::is_constant() const { return node_->op == Op::Const; }

std::string Expr::str() const
{
    std::ostringstream os;
    os.precision(17);
    print(os, *node_, nullptr);
    return os.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_), std::max(a.nvars_, b.nvars_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_), std::max(a.nvars_, b.nvars_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_), std::max(a.nvars_, b.nvars_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(div(a.node_, b.node_), std::max(a.nvars_, b.nvars_)); }

GraphFunction graph_function_from_expr(const Expr& f, std::vector<Interval> domain, std::string name)
{
    const int n = static_cast<int>(domain.size());
    if (f.variable_count() > n)
        throw Error(ErrorKind::Precondition, "expression uses more variables than the domain has");
    std::vector<Expr> d1(static_cast<std::size_t>(n));
    std::vector<std::vector<Expr>> d2(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    std::vector<std::vector<std::vector<Expr>>> d3(
        static_cast<std::size_t>(n), std::vector<std::vector<Expr>>(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n))));
    for (int i = 0; i < n; ++i) {
        d1[i] = f.diff(i);
        for (int j = 0; j < n; ++j) {
            d2[i][j] = d1[i].diff(j);
            for (int k = 0; k < n; ++k)
                d3[i][j][k] = d2[i][j].diff(k);
        }
    }
    // (1/2) Lap |grad F|^2 = sum_k d_k d_k (1/2 sum_i F_i^2)
    Expr q = Expr::constant(0.0);
    for (int i = 0; i < n; ++i)
        q = q + d1[i] * d1[i];
    q = Expr::constant(0.5) * q;
    Expr half_lap = Expr::constant(0.0);
    for (int k = 0; k < n; ++k)
        half_lap = half_lap + q.diff(k).diff(k);

    auto args = [n](const Vec& x) {
        if (x.size() != n)
            throw Error(ErrorKind::Domain, "point has the wrong dimension");
        return x;
    };
    GraphFunction g([f, args](const Vec& x) { return f(args(x)); }, std::move(domain));
    g.with_gradient([d1, n](const Vec& x) {
        Vec out(n);
        for (int i = 0; i < n; ++i)
            out[i] = d1[i](x);
        return out;
    });
    g.with_hessian([d2, n](const Vec& x) {
        Mat out(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) = d2[i][j](x);
        return out;
    });
    g.with_third([d3, n](const Vec& x) {
        std::vector<Mat> out(static_cast<std::size_t>(n), Mat(n, n));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out[k](i, j) = d3[i][j][k](x);
        return out;
    });
    g.with_half_laplacian_grad_sq([half_lap](const Vec& x) { return half_lap(x); });
    g.with_name(std::move(name));
    return g;
}

} // namespace cpd
