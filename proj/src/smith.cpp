#include "gbg/smith.hpp"

#include <algorithm>

namespace gbg {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
    IntMatrix out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const BigInt& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < other.cols; ++j) out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

namespace {

void swapRows(IntMatrix& m, IntMatrix& u, int a, int b) {
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
}

void swapCols(IntMatrix& m, IntMatrix& v, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
}

void addRow(IntMatrix& m, IntMatrix& u, int target, int source, const BigInt& factor) {
    for (int j = 0; j < m.cols; ++j) m.at(target, j) += factor * m.at(source, j);
    for (int j = 0; j < u.cols; ++j) u.at(target, j) += factor * u.at(source, j);
}

void addCol(IntMatrix& m, IntMatrix& v, int target, int source, const BigInt& factor) {
    for (int i = 0; i < m.rows; ++i) m.at(i, target) += factor * m.at(i, source);
    for (int i = 0; i < v.rows; ++i) v.at(i, target) += factor * v.at(i, source);
}

void negateRow(IntMatrix& m, IntMatrix& u, int r) {
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
    for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
}

}  // namespace

SmithResult smithNormalForm(const IntMatrix& input) {
    IntMatrix m = input;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);
    int t = 0;
    int limit = std::min(m.rows, m.cols);

    while (t < limit) {
        // Find the smallest nonzero entry in the remaining block as pivot.
        int pr = -1, pc = -1;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j) {
                const BigInt& x = m.at(i, j);
                if (x == 0) continue;
                if (pr < 0 || abs(x) < abs(m.at(pr, pc))) {
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        if (pr != t) swapRows(m, u, t, pr);
        if (pc != t) swapCols(m, v, t, pc);
        if (m.at(t, t) < 0) negateRow(m, u, t);

        bool clean = true;
        for (int i = t + 1; i < m.rows; ++i) {
            if (m.at(i, t) == 0) continue;
            BigInt q = m.at(i, t) / m.at(t, t);
            addRow(m, u, i, t, -q);
            if (m.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < m.cols; ++j) {
            if (m.at(t, j) == 0) continue;
            BigInt q = m.at(t, j) / m.at(t, t);
            addCol(m, v, j, t, -q);
            if (m.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // pivot shrank; repeat with a smaller pivot

        // Enforce divisibility d_t | everything below-right.
        bool divides = true;
        for (int i = t + 1; i < m.rows && divides; ++i)
            for (int j = t + 1; j < m.cols && divides; ++j)
                if (m.at(i, j) % m.at(t, t) != 0) {
                    addRow(m, u, t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }

    SmithResult out;
    out.diagonal.reserve(limit);
    for (int i = 0; i < limit; ++i) out.diagonal.push_back(m.at(i, i));
    out.u = std::move(u);
    out.v = std::move(v);
    out.d = std::move(m);
    return out;
}

}  // namespace gbg
