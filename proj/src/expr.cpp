#include "jetvar/expr.hpp"

#include <cctype>
#include <cmath>

namespace jv {

class ExprParser {
public:
    ExprParser(const std::string& s, const std::function<int(const std::string&)>& r) : s_(s), resolve_(r) {}

    Expr run() {
        e_.src_ = s_;
        e_.root_ = sum();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e_;
    }

private:
    const std::string& s_;
    const std::function<int(const std::string&)>& resolve_;
    std::size_t pos_ = 0;
    Expr e_;

    int add(Expr::Op op, int a = -1, int b = -1, double num = 0.0, int var = -1) {
        e_.nodes_.push_back({op, num, var, a, b});
        return (int)e_.nodes_.size() - 1;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int sum() {
        int a = product();
        for (;;) {
            if (eat('+')) a = add(Expr::Op::Add, a, product());
            else if (eat('-')) a = add(Expr::Op::Sub, a, product());
            else return a;
        }
    }
    int product() {
        int a = unary();
        for (;;) {
            if (eat('*')) a = add(Expr::Op::Mul, a, unary());
            else if (eat('/')) a = add(Expr::Op::Div, a, unary());
            else return a;
        }
    }
    int unary() {
        if (eat('-')) return add(Expr::Op::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    int power() {
        int a = atom();
        if (eat('^')) {
            skip();
            std::size_t at = pos_;
            bool neg = eat('-');
            int b = atom();
            if (e_.nodes_[b].op != Expr::Op::Num) throw ParseError("exponent must be a number", at);
            if (neg) e_.nodes_[b].num = -e_.nodes_[b].num;
            return add(Expr::Op::Pow, a, b);
        }
        return a;
    }
    int atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            int a = sum();
            if (!eat(')')) throw ParseError("missing ')'", pos_);
            return a;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            std::size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            return add(Expr::Op::Num, -1, -1, v);
        }
        if (std::isalpha((unsigned char)c)) {
            std::size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(st, pos_ - st);
            static const std::pair<const char*, Expr::Op> funcs[] = {{"sqrt", Expr::Op::Sqrt}, {"exp", Expr::Op::Exp},
                                                                     {"log", Expr::Op::Log},   {"sin", Expr::Op::Sin},
                                                                     {"cos", Expr::Op::Cos}};
            for (const auto& [fn, op] : funcs) {
                if (name == fn) {
                    if (!eat('(')) throw ParseError("expected '(' after " + name, pos_);
                    int a = sum();
                    if (!eat(')')) throw ParseError("missing ')'", pos_);
                    return add(op, a);
                }
            }
            if (name == "pi") return add(Expr::Op::Num, -1, -1, M_PI);
            int v = resolve_(name);
            if (v < 0) throw ParseError("unknown variable '" + name + "'", st);
            return add(Expr::Op::Var, -1, -1, 0.0, v);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
};

Expr Expr::parse(const std::string& text, const std::function<int(const std::string&)>& resolve) {
    return ExprParser(text, resolve).run();
}

Poly Expr::poly_node(int k, int nvars) const {
    const Node& nd = nodes_[k];
    switch (nd.op) {
        case Op::Num: return Poly::constant(nvars, nd.num);
        case Op::Var: return Poly::variable(nvars, nd.var);
        case Op::Add: return poly_node(nd.a, nvars) + poly_node(nd.b, nvars);
        case Op::Sub: return poly_node(nd.a, nvars) - poly_node(nd.b, nvars);
        case Op::Mul: return poly_node(nd.a, nvars) * poly_node(nd.b, nvars);
        case Op::Neg: return poly_node(nd.a, nvars) * -1.0;
        case Op::Div: {
            Poly d = poly_node(nd.b, nvars);
            if (d.degree() > 0 || d.is_zero()) throw std::runtime_error("polynomial division by a non-constant");
            return poly_node(nd.a, nvars) * (1.0 / d.terms.begin()->second);
        }
        case Op::Pow: {
            double e = nodes_[nd.b].num;
            if (e < 0 || e != std::floor(e)) throw std::runtime_error("polynomial power must be a non-negative integer");
            Poly base = poly_node(nd.a, nvars);
            Poly r = Poly::constant(nvars, 1.0);
            for (int i = 0; i < (int)e; ++i) r = r * base;
            return r;
        }
        default: throw std::runtime_error("expression is not a polynomial");
    }
}

Poly Expr::to_poly(int nvars) const { return poly_node(root_, nvars); }

int jet_var_index(const std::string& name, int n, int m, int order) {
    if (name.size() < 2) return -1;
    auto digits = [](const std::string& s, int& out) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit((unsigned char)c)) return false;
        out = std::stoi(s);
        return true;
    };
    if (name[0] == 'x') {
        int i;
        if (!digits(name.substr(1), i) || i < 1 || i > n) return -1;
        return i - 1;
    }
    if (name[0] != 'y') return -1;
    auto us = name.find('_');
    int a;
    if (!digits(name.substr(1, us == std::string::npos ? std::string::npos : us - 1), a) || a < 1 || a > m) return -1;
    --a;
    if (us == std::string::npos) return n + a;
    std::string idx = name.substr(us + 1);
    if (idx.empty() || (int)idx.size() > order) return -1;
    std::vector<int> ii;
    for (char c : idx) {
        if (!std::isdigit((unsigned char)c)) return -1;
        int v = c - '1';
        if (v < 0 || v >= n) return -1;
        ii.push_back(v);
    }
    int base = n + m;
    if (ii.size() == 1) return base + a * n + ii[0];
    base += m * n;
    int s2 = sym2_count(n);
    if (ii.size() == 2) return base + a * s2 + sym2(n, ii[0], ii[1]);
    base += m * s2;
    return base + a * sym3_count(n) + sym3(n, ii[0], ii[1], ii[2]);
}

ExprJetFunction ExprJetFunction::parse(const std::string& text, int n, int m, int order) {
    ExprJetFunction f;
    f.n = n;
    f.m = m;
    f.order = order;
    f.expr = Expr::parse(text, [&](const std::string& s) { return jet_var_index(s, n, m, order); });
    return f;
}

Poly parse_poly(const std::string& text, int n, int m) {
    auto e = Expr::parse(text, [&](const std::string& s) {
        if (s.size() < 2) return -1;
        int i = 0;
        for (std::size_t k = 1; k < s.size(); ++k) {
            if (!std::isdigit((unsigned char)s[k])) return -1;
            i = i * 10 + (s[k] - '0');
        }
        if (s[0] == 'x' && i >= 1 && i <= n) return i - 1;
        if (s[0] == 'y' && i >= 1 && i <= m) return n + i - 1;
        return -1;
    });
    return e.to_poly(n + m);
}

}  // namespace jv
