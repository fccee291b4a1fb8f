#pragma once
// Arithmetic expressions over named variables, evaluated at any scalar type.
// Grammar: sums, products, quotients, ^ with constant exponent, unary minus,
// parentheses, numbers, and sqrt/exp/log/sin/cos.

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/jet.hpp"
#include "jetvar/poly.hpp"

namespace jv {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at column " + std::to_string(pos + 1)), column(pos + 1) {}
    std::size_t column;
};

class Expr {
public:
    enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Exp, Log, Sin, Cos };

    // resolve maps a variable name to an index, or -1 if unknown.
    static Expr parse(const std::string& text, const std::function<int(const std::string&)>& resolve);

    template <class S>
    S eval(const std::vector<S>& vars) const {
        return eval_node<S>(root_, vars);
    }

    Poly to_poly(int nvars) const;
    bool empty() const { return root_ < 0; }
    std::string source() const { return src_; }

    struct Node {
        Op op;
        double num = 0.0;
        int var = -1;
        int a = -1, b = -1;
    };

private:
    std::vector<Node> nodes_;
    int root_ = -1;
    std::string src_;

    template <class S>
    S eval_node(int k, const std::vector<S>& v) const {
        using std::cos;
        using std::exp;
        using std::log;
        using std::pow;
        using std::sin;
        using std::sqrt;
        const Node& nd = nodes_[k];
        switch (nd.op) {
            case Op::Num: return S(nd.num);
            case Op::Var: return v[nd.var];
            case Op::Add: return eval_node<S>(nd.a, v) + eval_node<S>(nd.b, v);
            case Op::Sub: return eval_node<S>(nd.a, v) - eval_node<S>(nd.b, v);
            case Op::Mul: return eval_node<S>(nd.a, v) * eval_node<S>(nd.b, v);
            case Op::Div: return eval_node<S>(nd.a, v) / eval_node<S>(nd.b, v);
            case Op::Neg: return -eval_node<S>(nd.a, v);
            case Op::Pow: {
                double e = nodes_[nd.b].num;
                S base = eval_node<S>(nd.a, v);
                if (e == std::floor(e) && std::fabs(e) < 64) return ipow(base, (int)e);
                return pow(base, e);
            }
            case Op::Sqrt: return sqrt(eval_node<S>(nd.a, v));
            case Op::Exp: return exp(eval_node<S>(nd.a, v));
            case Op::Log: return log(eval_node<S>(nd.a, v));
            case Op::Sin: return sin(eval_node<S>(nd.a, v));
            case Op::Cos: return cos(eval_node<S>(nd.a, v));
        }
        return S(0.0);
    }
    Poly poly_node(int k, int nvars) const;
    friend class ExprParser;
};

// Names: x1..xn, y<a>, y<a>_<i>, y<a>_<ij>, y<a>_<ijk> (1-based digits).
// Returns the flat jet coordinate of a name for a jet of the given order, or -1.
int jet_var_index(const std::string& name, int n, int m, int order);

// A user Lagrangian (or any jet function) given by an expression.
struct ExprJetFunction {
    int n = 0, m = 0, order = 2;
    Expr expr;
    static ExprJetFunction parse(const std::string& text, int n, int m, int order = 2);

    template <class S>
    S operator()(const Jet<S>& p) const {
        std::vector<S> v;
        v.reserve(jet_coord_count(n, m, order));
        for (int c = 0; c < jet_coord_count(n, m, order); ++c) {
            if (c < p.size()) v.push_back(p.coord(c));
            else v.push_back(S(0.0));
        }
        return expr.eval(v);
    }
};

// Polynomial in x1..xn (and optionally y1..ym after the x's).
Poly parse_poly(const std::string& text, int n, int m = 0);

}  // namespace jv
