#include "tangents/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace tangents {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view original)
{
    if (digits.empty())
        throw ParseError("not a number: '" + std::string(original) + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("not a number: '" + std::string(original) + "'");
    return BigInt(std::string(digits), 10);
}

BigInt pow10(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Rational parse_signed_integer(std::string_view s, std::string_view original)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    BigInt v = parse_integer(s, original);
    return Rational(negative ? BigInt(-v) : v);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view original = text;
    text = trim(text);
    if (text.empty())
        throw ParseError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_signed_integer(text.substr(0, slash), original);
        Rational den = parse_signed_integer(text.substr(slash + 1), original);
        if (den == 0)
            throw ParseError("zero denominator: '" + std::string(original) + "'");
        Rational r = num / den;
        return r;
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        Rational ev = parse_signed_integer(text.substr(e + 1), original);
        if (abs(ev.get_num()) > 10000)
            throw ParseError("exponent out of range: '" + std::string(original) + "'");
        exponent = ev.get_num().get_si();
        text = text.substr(0, e);
    }

    std::string digits;
    long frac_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot);
        std::string_view fp = text.substr(dot + 1);
        if (ip.empty() && fp.empty())
            throw ParseError("not a number: '" + std::string(original) + "'");
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<long>(fp.size());
    } else {
        digits = std::string(text);
    }

    Rational r(parse_integer(digits, original));
    const long scale = exponent - frac_digits;
    if (scale > 0)
        r *= Rational(pow10(static_cast<unsigned long>(scale)));
    else if (scale < 0)
        r /= Rational(pow10(static_cast<unsigned long>(-scale)));
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

Rational rat(long num, long den)
{
    if (den == 0)
        throw ParseError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    return r.get_str();
}

int sign(const Rational& r)
{
    return sgn(r);
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
{
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::diagonal(const std::vector<Rational>& d)
{
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

bool RatMatrix::is_symmetric() const
{
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::submatrix(const std::vector<std::size_t>& row_ids,
                               const std::vector<std::size_t>& col_ids) const
{
    RatMatrix s(row_ids.size(), col_ids.size());
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        for (std::size_t j = 0; j < col_ids.size(); ++j)
            s(i, j) = (*this)(row_ids[i], col_ids[j]);
    return s;
}

RatMatrix RatMatrix::column(std::size_t j) const
{
    RatMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i)
        c(i, 0) = (*this)(i, j);
    return c;
}

RatMatrix RatMatrix::hstack(const RatMatrix& other) const
{
    if (rows_ != other.rows_)
        throw DimensionError("hstack: row counts differ");
    RatMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j)
            m(i, cols_ + j) = other(i, j);
    }
    return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& other) const
{
    return transpose().hstack(other.transpose()).transpose();
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw DimensionError("matrix product: inner dimensions differ");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix sum: shapes differ");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b)
{
    return a + Rational(-1) * b;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a)
{
    RatMatrix c = a;
    for (auto& x : c.data_)
        x *= s;
    return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

CplxMatrix to_complex(const RatMatrix& m)
{
    CplxMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            c(i, j) = Complex(m(i, j).get_d(), 0.0);
    return c;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r)
{
    std::vector<std::vector<std::size_t>> out;
    if (r > n)
        return out;
    std::vector<std::size_t> cur(r);
    for (std::size_t i = 0; i < r; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to the next combination in lex order
        std::size_t i = r;
        while (i > 0 && cur[i - 1] == n - r + (i - 1))
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < r; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational det(const RatMatrix& m)
{
    if (!m.is_square())
        throw DimensionError("det: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", not square");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = c; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0)
                continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots)
{
    RatMatrix a = m;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(row, j));
        Rational inv = 1 / a(row, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(row, j);
        }
        piv.push_back(c);
        ++row;
    }
    if (pivots)
        *pivots = std::move(piv);
    return a;
}

std::size_t rank(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

RatMatrix nullspace(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    RatMatrix r = rref(m, &piv);
    std::vector<std::size_t> free;
    for (std::size_t c = 0, k = 0; c < m.cols(); ++c) {
        if (k < piv.size() && piv[k] == c)
            ++k;
        else
            free.push_back(c);
    }
    RatMatrix basis(m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        basis(free[f], f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            basis(piv[i], f) = -r(i, free[f]);
    }
    return basis;
}

RatMatrix exterior_power(const RatMatrix& m, std::size_t r)
{
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw DimensionError("exterior_power: r=" + std::to_string(r) +
                             " outside 1.." + std::to_string(std::min(m.rows(), m.cols())));
    const auto row_sets = subsets(m.rows(), r);
    const auto col_sets = subsets(m.cols(), r);
    RatMatrix out(row_sets.size(), col_sets.size());
    for (std::size_t i = 0; i < row_sets.size(); ++i)
        for (std::size_t j = 0; j < col_sets.size(); ++j)
            out(i, j) = det(m.submatrix(row_sets[i], col_sets[j]));
    return out;
}

Signature signature(const RatMatrix& q)
{
    if (!q.is_symmetric())
        throw DimensionError("signature: matrix is not symmetric");
    const std::size_t n = q.rows();
    RatMatrix a = q;
    Signature s;

    auto add_into = [&](std::size_t dst, std::size_t src) {
        // congruence by the elementary matrix x_dst += x_src
        for (std::size_t j = 0; j < n; ++j)
            a(dst, j) += a(src, j);
        for (std::size_t i = 0; i < n; ++i)
            a(i, dst) += a(i, src);
    };
    auto swap_sym = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c)
            std::swap(a(i, c), a(j, c));
        for (std::size_t r = 0; r < n; ++r)
            std::swap(a(r, i), a(r, j));
    };

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = step; i < n && piv == n; ++i)
            if (a(i, i) != 0)
                piv = i;
        if (piv == n) {
            // zero diagonal: a nonzero off-diagonal entry can be folded in
            for (std::size_t i = step; i < n && piv == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        add_into(i, j);
                        piv = i;
                        break;
                    }
        }
        if (piv == n) {
            s.zero += static_cast<int>(n - step);
            break;
        }
        swap_sym(step, piv);
        const Rational d = a(step, step);
        (sgn(d) > 0 ? s.pos : s.neg) += 1;
        for (std::size_t r = step + 1; r < n; ++r) {
            if (a(r, step) == 0)
                continue;
            Rational f = a(r, step) / d;
            for (std::size_t c = step; c < n; ++c)
                a(r, c) -= f * a(step, c);
            for (std::size_t c = step; c < n; ++c)
                a(c, r) = a(r, c);
        }
    }
    return s;
}

LinearSolution solve_linear(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows() != b.rows())
        throw DimensionError("solve_linear: a has " + std::to_string(a.rows()) +
                             " rows but b has " + std::to_string(b.rows()));
    std::vector<std::size_t> piv;
    RatMatrix aug = rref(a.hstack(b), &piv);
    LinearSolution sol;
    for (std::size_t p : piv)
        if (p >= a.cols())
            return sol;  // pivot in the right-hand side

    sol.particular = RatMatrix(a.cols(), b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            sol.particular(piv[i], j) = aug(i, a.cols() + j);
    sol.nullspace = nullspace(a);
    sol.kind = sol.nullspace.cols() == 0 ? LinearSolution::Kind::Unique
                                         : LinearSolution::Kind::Family;
    return sol;
}

}  // namespace tangents
