#pragma once

// Small helpers shared by the test suites: seeded random rationals and
// matrices, and brute-force oracles that do not go through the library.

#include <random>

#include "tangents/exactnum.hpp"

namespace testing_support {

using tangents::Rational;
using tangents::RatMatrix;
using tangents::rat;

inline Rational random_rational(std::mt19937_64& rng, long lo = -9, long hi = 9, long max_den = 1)
{
    std::uniform_int_distribution<long> num(lo, hi), den(1, max_den);
    return rat(num(rng), den(rng));
}

inline RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               long lo = -9, long hi = 9, long max_den = 1)
{
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = random_rational(rng, lo, hi, max_den);
    return m;
}

inline RatMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo = -9, long hi = 9)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m(i, j) = m(j, i) = random_rational(rng, lo, hi);
    return m;
}

/// Laplace expansion along the first row.
inline Rational cofactor_det(const RatMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j)
                    minor(r - 1, cc++) = m(r, c);
        const Rational term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

}  // namespace testing_support
