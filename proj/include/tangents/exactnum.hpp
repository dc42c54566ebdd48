#pragma once

// Exact rational scalars and dense matrices.
//
// Every routine here is exact: determinants, minors, elimination and
// signatures are computed over Q with GMP rationals. Subsets of row/column
// indices are always enumerated in lexicographic order of sorted tuples;
// the rest of the library relies on that ordering.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace tangents {

using Rational = mpq_class;
using BigInt = mpz_class;
using Complex = std::complex<double>;
using CplxMatrix = Eigen::MatrixXcd;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", an integer, or a decimal such as "-0.125" or "1e-3".
/// Decimals are converted exactly, never through a binary float.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms (mpq_class(num, den) alone does not reduce).
Rational rat(long num, long den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

int sign(const Rational& r);

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix diagonal(const std::vector<Rational>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return data_; }

    RatMatrix transpose() const;
    RatMatrix submatrix(const std::vector<std::size_t>& row_ids,
                        const std::vector<std::size_t>& col_ids) const;
    RatMatrix column(std::size_t j) const;
    /// Horizontal concatenation [*this | other].
    RatMatrix hstack(const RatMatrix& other) const;
    RatMatrix vstack(const RatMatrix& other) const;

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

CplxMatrix to_complex(const RatMatrix& m);

/// All r-element subsets of {0..n-1}, lexicographic.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r);

BigInt binomial(unsigned long n, unsigned long k);

Rational det(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Reduced row echelon form; pivot columns are returned through `pivots`.
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of {x : m x = 0}, one basis vector per column.
RatMatrix nullspace(const RatMatrix& m);

/// Matrix of r x r minors; entry (I,J) is the minor on rows I and columns J.
RatMatrix exterior_power(const RatMatrix& m, std::size_t r);

struct Signature {
    int pos = 0;
    int neg = 0;
    int zero = 0;
    int value() const { return pos - neg; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric matrix, by exact congruence diagonalisation.
Signature signature(const RatMatrix& q);

struct LinearSolution {
    enum class Kind { Unique, Family, Inconsistent };
    Kind kind = Kind::Inconsistent;
    RatMatrix particular;  // cols(a) x cols(b); empty when inconsistent
    RatMatrix nullspace;   // cols(a) x dim; zero columns when unique
};

/// Solves a x = b exactly. b may carry several right-hand sides.
LinearSolution solve_linear(const RatMatrix& a, const RatMatrix& b);

}  // namespace tangents
