#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace gbg {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    BigInt& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const BigInt& at(int r, int c) const {
        return data[static_cast<std::size_t>(r) * cols + c];
    }

    static IntMatrix identity(int n);
    IntMatrix multiply(const IntMatrix& other) const;
    bool operator==(const IntMatrix&) const = default;
};

struct SmithResult {
    std::vector<BigInt> diagonal;  // d1 | d2 | ..., all >= 0
    IntMatrix u;                   // unimodular, rows x rows
    IntMatrix v;                   // unimodular, cols x cols
    IntMatrix d;                   // u * m * v
};

SmithResult smithNormalForm(const IntMatrix& m);

}  // namespace gbg
