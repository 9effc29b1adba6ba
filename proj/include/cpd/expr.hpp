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
#pragma once

#include <cpd/graph_function.hpp>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cpd {

/// Arithmetic expression in a fixed list of variables.
///
/// Grammar: + - * / ^ (right associative, binds tighter than unary minus),
/// parentheses, numbers, the constants pi and e, and the functions sin, cos,
/// tan, sinh, cosh, tanh, asinh, atan, asin, acos, exp, ln (alias log), sqrt,
/// abs and sign.
class Expr {
public:
    struct Node;

    Expr();
    static Expr parse(const std::string& text, const std::vector<std::string>& variables);
    static Expr constant(double v);
    static Expr variable(int index, int count);

    double eval(std::span<const double> values) const;
    double operator()(double v) const { return eval(std::span<const double>(&v, 1)); }
    double operator()(const Vec& v) const { return eval(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))); }

    /// Symbolic partial derivative with respect to variable `index`.
    Expr diff(int index) const;
    bool is_constant() const;
    int variable_count() const { return nvars_; }
    std::string str() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);

private:
    Expr(std::shared_ptr<const Node> n, int nvars) : node_(std::move(n)), nvars_(nvars) {}

    std::shared_ptr<const Node> node_;
    int nvars_ = 0;
};

/// Graph function over `domain` with every derivative evaluator, including
/// (1/2) Lap |grad F|^2, built from symbolic derivatives of F.
GraphFunction graph_function_from_expr(const Expr& f, std::vector<Interval> domain, std::string name = "F");

} // namespace cpd
