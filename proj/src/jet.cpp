#include "jetvar/jet.hpp"

#include <mutex>

namespace jv {

namespace {

struct Sym3Table {
    std::vector<int> idx;  // n^3 lookup
    std::vector<std::array<int, 3>> triples;
};

const Sym3Table& sym3_table(int n) {
    static std::array<Sym3Table, 9> tables;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int nn = 1; nn <= 8; ++nn) {
            auto& t = tables[nn];
            t.idx.assign(nn * nn * nn, -1);
            int c = 0;
            for (int i = 0; i < nn; ++i)
                for (int j = i; j < nn; ++j)
                    for (int k = j; k < nn; ++k) {
                        t.triples.push_back({i, j, k});
                        int p[3] = {i, j, k};
                        std::sort(p, p + 3);
                        do {
                            t.idx[(p[0] * nn + p[1]) * nn + p[2]] = c;
                        } while (std::next_permutation(p, p + 3));
                        ++c;
                    }
        }
    });
    if (n < 1 || n > 8) throw JetError("base dimension must be in 1..8");
    return tables[n];
}

}  // namespace

int sym3(int n, int i, int j, int k) { return sym3_table(n).idx[(i * n + j) * n + k]; }

std::array<int, 2> sym2_pair(int n, int idx) {
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (sym2(n, i, j) == idx) return {i, j};
    throw JetError("bad symmetric pair index");
}

std::array<int, 3> sym3_triple(int n, int idx) { return sym3_table(n).triples.at(idx); }

std::string coord_label(int n, int m, int c) {
    if (c < n) return "x" + std::to_string(c + 1);
    c -= n;
    if (c < m) return "y" + std::to_string(c + 1);
    c -= m;
    if (c < m * n) return "y" + std::to_string(c / n + 1) + "_" + std::to_string(c % n + 1);
    c -= m * n;
    int s2 = sym2_count(n);
    if (c < m * s2) {
        auto p = sym2_pair(n, c % s2);
        return "y" + std::to_string(c / s2 + 1) + "_" + std::to_string(p[0] + 1) + std::to_string(p[1] + 1);
    }
    c -= m * s2;
    int s3 = sym3_count(n);
    auto t = sym3_triple(n, c % s3);
    return "y" + std::to_string(c / s3 + 1) + "_" + std::to_string(t[0] + 1) + std::to_string(t[1] + 1) +
           std::to_string(t[2] + 1);
}

}  // namespace jv
