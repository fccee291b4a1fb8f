#include "jetvar/rational.hpp"

#include <stdexcept>

namespace jv {

namespace {

template <class M, class T>
std::vector<int> rref_impl(M& m) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!(m(i, c) == T(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == T(0)) continue;
            T f = m(i, c);
            for (int j = c; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class M, class T>
std::vector<std::vector<T>> nullspace_impl(M m) {
    auto piv = rref_impl<M, T>(m);
    std::vector<char> is_piv(m.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::vector<T>> out;
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<T> v(m.cols, T(0));
        v[f] = T(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = T(0) - m(static_cast<int>(r), f);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::vector<int> rref(QMatrix& m) { return rref_impl<QMatrix, Q>(m); }
int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }
Q det(QMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: matrix is not square");
    Q d = 1;
    for (int c = 0; c < m.cols; ++c) {
        int p = c;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) return Q(0);
        if (p != c) {
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (int i = c + 1; i < m.rows; ++i) {
            if (m(i, c) == 0) continue;
            Q f = m(i, c) / m(c, c);
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::vector<std::vector<Q>> nullspace(QMatrix m) { return nullspace_impl<QMatrix, Q>(std::move(m)); }

std::vector<int> rref(QCMatrix& m) { return rref_impl<QCMatrix, QC>(m); }
std::vector<std::vector<QC>> nullspace(QCMatrix m) { return nullspace_impl<QCMatrix, QC>(std::move(m)); }

std::string qstr(const Q& q) { return q.get_str(); }

std::string QC::str() const {
    if (im == 0) return re.get_str();
    std::string s;
    if (re != 0) s = re.get_str() + (im > 0 ? "+" : "");
    if (im == 1) return s + "i";
    if (im == -1) return s + "-i";
    return s + im.get_str() + "i";
}

}  // namespace jv
