#include "tangents/grassmann.hpp"

#include <algorithm>
#include <map>

namespace tangents {

namespace {

/// Sign of the permutation sorting `tuple`, or 0 if it has a repeat.
int sort_sign(std::vector<std::size_t>& tuple)
{
    int s = 1;
    for (std::size_t i = 1; i < tuple.size(); ++i)
        for (std::size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
            if (tuple[j - 1] == tuple[j])
                return 0;
            std::swap(tuple[j - 1], tuple[j]);
            s = -s;
        }
    return s;
}

class SubsetIndex {
public:
    SubsetIndex(std::size_t n_plus_1, std::size_t r)
    {
        auto sets = subsets(n_plus_1, r);
        for (std::size_t i = 0; i < sets.size(); ++i)
            index_.emplace(sets[i], i);
    }

    /// Position of the sorted tuple and the sign of the sort, sign 0 on repeats.
    std::pair<std::size_t, int> locate(std::vector<std::size_t> tuple) const
    {
        int s = sort_sign(tuple);
        if (s == 0)
            return {0, 0};
        return {index_.at(tuple), s};
    }

private:
    std::map<std::vector<std::size_t>, std::size_t> index_;
};

template <typename Scalar, typename Coords>
std::vector<Scalar> relation_values(const Coords& coords, std::size_t k, std::size_t n)
{
    const SubsetIndex idx(n + 1, k + 1);
    std::vector<Scalar> out;
    auto value = [&](const std::vector<std::size_t>& tuple) -> Scalar {
        auto [pos, s] = idx.locate(tuple);
        if (s == 0)
            return Scalar(0);
        return s > 0 ? Scalar(coords[pos]) : Scalar(-coords[pos]);
    };
    for (const auto& big : subsets(n + 1, k + 2))
        for (const auto& small : subsets(n + 1, k)) {
            Scalar sum(0);
            for (std::size_t l = 0; l < big.size(); ++l) {
                std::vector<std::size_t> omitted;
                for (std::size_t t = 0; t < big.size(); ++t)
                    if (t != l)
                        omitted.push_back(big[t]);
                std::vector<std::size_t> extended = small;
                extended.push_back(big[l]);
                Scalar term = value(omitted) * value(extended);
                // (-1)^l with l counted from 1
                if ((l + 1) % 2 == 1)
                    sum -= term;
                else
                    sum += term;
            }
            out.push_back(sum);
        }
    return out;
}

PluckerVector minors_vector(const RatMatrix& m, std::size_t k, std::size_t n)
{
    RatMatrix ext = exterior_power(m, k + 1);
    PluckerVector p{k, n, {}};
    p.coords.reserve(ext.rows());
    for (std::size_t i = 0; i < ext.rows(); ++i)
        p.coords.push_back(ext(i, 0));
    return p;
}

Rational klein_bilinear(const PluckerVector& p, const PluckerVector& q)
{
    const auto& a = p.coords;
    const auto& b = q.coords;
    // lex order: 01 02 03 12 13 23
    Rational s = a[0] * b[5] + a[5] * b[0] - a[1] * b[4] - a[4] * b[1] + a[2] * b[3] + a[3] * b[2];
    return s / 2;
}

bool is_square(const Rational& r, Rational* root)
{
    if (sgn(r) < 0)
        return false;
    const mpz_class& num = r.get_num();
    const mpz_class& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    if (root)
        *root = Rational(sqrt(num), sqrt(den));
    return true;
}

}  // namespace

std::string subset_label(const std::vector<std::size_t>& subset)
{
    std::string s;
    for (std::size_t i : subset)
        s += static_cast<char>('0' + i);
    return s;
}

std::vector<std::string> plucker_labels(std::size_t k, std::size_t n)
{
    std::vector<std::string> out;
    for (const auto& s : subsets(n + 1, k + 1))
        out.push_back(subset_label(s));
    return out;
}

const Rational& PluckerVector::operator[](std::string_view label) const
{
    const auto labels = plucker_labels(k, n);
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw DimensionError("no Plücker coordinate '" + std::string(label) + "'");
    return coords[static_cast<std::size_t>(it - labels.begin())];
}

PluckerVector normalized(PluckerVector p)
{
    auto it = std::find_if(p.coords.begin(), p.coords.end(), [](const Rational& x) { return x != 0; });
    if (it == p.coords.end())
        return p;
    const Rational scale = 1 / *it;
    for (auto& x : p.coords)
        x *= scale;
    return p;
}

bool proportional(const PluckerVector& a, const PluckerVector& b)
{
    if (a.k != b.k || a.n != b.n)
        return false;
    return normalized(a).coords == normalized(b).coords;
}

PluckerVector plucker(const ProjFlat& f)
{
    if (f.span.cols() > f.span.rows() || rank(f.span) != f.span.cols())
        throw DegenerateFlatError("plucker: spanning matrix is not of full column rank");
    return normalized(minors_vector(f.span, f.k(), f.n()));
}

PluckerVector dual_plucker(const DualFlat& f)
{
    if (f.hyperplanes.cols() > f.hyperplanes.rows() || rank(f.hyperplanes) != f.hyperplanes.cols())
        throw DegenerateFlatError("dual_plucker: hyperplanes are linearly dependent");
    return normalized(minors_vector(f.hyperplanes, f.k(), f.n()));
}

DualFlat dual_of(const ProjFlat& f)
{
    return DualFlat{nullspace(f.span.transpose())};
}

ProjFlat span_of(const DualFlat& f)
{
    return ProjFlat{nullspace(f.hyperplanes.transpose())};
}

ProjFlat flat_from_plucker(const PluckerVector& p)
{
    const SubsetIndex idx(p.n + 1, p.k + 1);
    const auto sets = subsets(p.n + 1, p.k + 1);
    std::size_t pivot = 0;
    while (pivot < p.coords.size() && p.coords[pivot] == 0)
        ++pivot;
    if (pivot == p.coords.size())
        throw DegenerateFlatError("flat_from_plucker: zero vector");
    const auto& base = sets[pivot];
    RatMatrix span(p.n + 1, p.k + 1);
    for (std::size_t t = 0; t <= p.k; ++t)
        for (std::size_t i = 0; i <= p.n; ++i) {
            auto tuple = base;
            tuple[t] = i;
            auto [pos, s] = idx.locate(tuple);
            if (s != 0)
                span(i, t) = s > 0 ? p.coords[pos] : Rational(-p.coords[pos]);
        }
    return ProjFlat{span};
}

std::vector<Rational> plucker_relation_values(const PluckerVector& p)
{
    return relation_values<Rational>(p.coords, p.k, p.n);
}

Rational check_plucker_relations(const PluckerVector& p)
{
    Rational worst = 0;
    for (const auto& v : plucker_relation_values(p))
        worst = std::max(worst, Rational(abs(v)));
    return worst;
}

double check_plucker_relations(const Eigen::VectorXcd& p, std::size_t k, std::size_t n)
{
    const Eigen::VectorXcd unit = p / p.norm();
    std::vector<Complex> coords(unit.data(), unit.data() + unit.size());
    double worst = 0;
    for (const auto& v : relation_values<Complex>(coords, k, n))
        worst = std::max(worst, std::abs(v));
    return worst;
}

Rational incidence(const PluckerVector& p, const PluckerVector& q)
{
    if (p.k != q.k || p.n != q.n || p.coords.size() != q.coords.size())
        throw DimensionError("incidence: Plücker vectors of different shapes");
    Rational s = 0;
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        s += p.coords[i] * q.coords[i];
    return s;
}

bool flats_meet(const ProjFlat& u, const ProjFlat& v)
{
    return rank(u.span.hstack(v.span)) < u.span.cols() + v.span.cols();
}

BigInt catalan(unsigned long m)
{
    return binomial(2 * m, m) / (m + 1);
}

Counts counts(std::size_t k, std::size_t n)
{
    if (k < 1 || n < k + 2)
        throw DimensionError("counts: need 1 <= k <= n-2, got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n));
    Counts c;
    c.k = k;
    c.n = n;
    c.dim = (k + 1) * (n - k);
    auto factorial = [](unsigned long m) {
        BigInt r;
        mpz_fac_ui(r.get_mpz_t(), m);
        return r;
    };
    BigInt num = factorial(c.dim);
    for (unsigned long i = 1; i <= k; ++i)
        num *= factorial(i);
    BigInt den = 1;
    for (unsigned long i = n - k; i <= n; ++i)
        den *= factorial(i);
    c.degree = num / den;
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, c.dim);
    c.total = two_pow * c.degree;
    return c;
}

Rational klein_quadric(const PluckerVector& p)
{
    if (p.k != 1 || p.n != 3)
        throw DimensionError("klein_quadric: expects a line in P^3");
    const auto& c = p.coords;
    return c[0] * c[5] - c[1] * c[4] + c[2] * c[3];
}

TransversalResult transversals_to_4_lines(const std::vector<ProjFlat>& lines)
{
    if (lines.size() != 4)
        throw DimensionError("transversals_to_4_lines: need exactly 4 lines");
    RatMatrix system(4, 6);
    for (std::size_t j = 0; j < 4; ++j) {
        if (lines[j].n() != 3 || lines[j].k() != 1)
            throw DimensionError("transversals_to_4_lines: inputs must be lines in P^3");
        PluckerVector q = dual_plucker(dual_of(lines[j]));
        for (std::size_t i = 0; i < 6; ++i)
            system(j, i) = q.coords[i];
    }

    TransversalResult res;
    res.incidence_rank = rank(system);
    RatMatrix pencil = nullspace(system);
    if (pencil.cols() != 2) {
        res.kind = TransversalResult::Kind::InfiniteFamily;
        return res;
    }
    auto column = [&](std::size_t j) {
        PluckerVector v{1, 3, {}};
        for (std::size_t i = 0; i < 6; ++i)
            v.coords.push_back(pencil(i, j));
        return v;
    };
    res.u = column(0);
    res.w = column(1);
    res.a = klein_bilinear(res.u, res.u);
    res.b = klein_bilinear(res.u, res.w);
    res.c = klein_bilinear(res.w, res.w);
    if (res.a == 0 && res.b == 0 && res.c == 0) {
        res.kind = TransversalResult::Kind::InfiniteFamily;
        return res;
    }
    res.kind = TransversalResult::Kind::Finite;
    res.discriminant = res.b * res.b - res.a * res.c;
    const int ds = sgn(res.discriminant);
    res.count = ds == 0 ? 1 : 2;
    res.real = ds >= 0;

    using Surd = TransversalResult::SurdCoord;
    // Each root (alpha : 1) of A a^2 + 2B a + C, written x + y sqrt(disc),
    // or the root (1 : 0) when A = 0.
    std::vector<std::pair<Surd, bool>> roots;  // (alpha, is_point_at_infinity)
    if (res.a != 0) {
        roots.push_back({Surd{-res.b / res.a, Rational(1) / res.a}, false});
        if (ds != 0)
            roots.push_back({Surd{-res.b / res.a, Rational(-1) / res.a}, false});
    } else {
        roots.push_back({Surd{0, 0}, true});
        if (res.b != 0)
            roots.push_back({Surd{-res.c / (2 * res.b), 0}, false});
    }

    Rational root_disc;
    const bool rational_roots = ds == 0 || is_square(res.discriminant, &root_disc) || res.a == 0;
    const Complex sqrt_disc = std::sqrt(Complex(res.discriminant.get_d(), 0.0));
    for (const auto& [alpha, at_inf] : roots) {
        std::vector<Surd> coords(6);
        for (std::size_t i = 0; i < 6; ++i) {
            if (at_inf)
                coords[i] = Surd{res.u.coords[i], 0};
            else
                coords[i] = Surd{alpha.x * res.u.coords[i] + res.w.coords[i], alpha.y * res.u.coords[i]};
        }
        res.surd_solutions.push_back(coords);

        Eigen::VectorXcd v(6);
        for (std::size_t i = 0; i < 6; ++i)
            v(static_cast<Eigen::Index>(i)) = coords[i].x.get_d() + coords[i].y.get_d() * sqrt_disc;
        res.numeric_solutions.push_back(v / v.norm());

        if (rational_roots) {
            PluckerVector p{1, 3, {}};
            for (const auto& c : coords)
                p.coords.push_back(c.x + c.y * (ds == 0 ? Rational(0) : root_disc));
            res.rational_solutions.push_back(normalized(p));
        }
    }
    return res;
}

bool surd_linear_vanishes(const std::vector<TransversalResult::SurdCoord>& p,
                          const std::vector<Rational>& coeff)
{
    Rational x = 0, y = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        x += coeff[i] * p[i].x;
        y += coeff[i] * p[i].y;
    }
    return x == 0 && y == 0;
}

bool surd_klein_vanishes(const std::vector<TransversalResult::SurdCoord>& p, const Rational& d)
{
    auto mul = [&](const TransversalResult::SurdCoord& a, const TransversalResult::SurdCoord& b) {
        return TransversalResult::SurdCoord{a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x};
    };
    auto m1 = mul(p[0], p[5]);
    auto m2 = mul(p[1], p[4]);
    auto m3 = mul(p[2], p[3]);
    return m1.x - m2.x + m3.x == 0 && m1.y - m2.y + m3.y == 0;
}

ProjFlat moment_osculating_flat(std::size_t n, const Rational& s)
{
    if (n < 3)
        throw DimensionError("moment_osculating_flat: need n >= 3");
    RatMatrix span(n + 1, n - 1);
    span(0, 0) = 1;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        // column j holds the j-th derivative of gamma at s
        for (std::size_t m = 1; m <= n; ++m) {
            if (m < j)
                continue;
            Rational coeff = 1;
            for (std::size_t t = 0; t < j; ++t)
                coeff *= static_cast<unsigned long>(m - t);
            Rational power = 1;
            for (std::size_t t = 0; t < m - j; ++t)
                power *= s;
            span(m, j) = coeff * power;
        }
    }
    return ProjFlat{span};
}

std::vector<ProjFlat> tetrahedron_lines()
{
    auto line = [](std::size_t a, std::size_t b) {
        RatMatrix m(4, 2);
        m(a, 0) = 1;
        m(b, 1) = 1;
        return ProjFlat{m};
    };
    // x0=x3=0, x0=x1=0, x1=x2=0, x2=x3=0
    return {line(1, 2), line(2, 3), line(0, 3), line(0, 1)};
}

}  // namespace tangents
