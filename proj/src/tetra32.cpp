#include "tangents/tetra32.hpp"

#include <cmath>
#include <numeric>

namespace tangents {

namespace {

Rational one_minus_a_one_minus_b(const TetraParams& p)
{
    return (1 - p.alpha) * (1 - p.beta);
}

std::string join(const std::vector<std::string>& parts)
{
    std::string s;
    for (const auto& part : parts)
        s += (s.empty() ? "" : ", ") + part;
    return s;
}

RadicalCoord rational_radical(int sign, const Rational& radicand)
{
    RadicalCoord c;
    c.sign = sign;
    c.radicands.push_back(QuadSurd{radicand, 0});
    return c;
}

RadicalCoord constant(const Rational& v)
{
    RadicalCoord c;
    c.coeff = QuadSurd{v, 0};
    return c;
}

template <typename F>
std::complex<F> eval(const QuadSurd& q, const std::complex<F>& sqrt_disc)
{
    return std::complex<F>(static_cast<F>(q.x.get_d())) +
           static_cast<F>(q.y.get_d()) * sqrt_disc;
}

template <typename F>
F to_float(const Rational& r)
{
    if constexpr (std::is_same_v<F, double>) {
        return r.get_d();
    } else {
        // numerator and denominator separately to keep the extra precision
        mpf_class num(r.get_num(), 128), den(r.get_den(), 128);
        mpf_class q(0, 128);
        q = num / den;
        long exp = 0;
        double mant = mpf_get_d_2exp(&exp, q.get_mpf_t());
        mpf_class rest(0, 128);
        rest = q - mpf_class(std::ldexp(mant, static_cast<int>(exp)), 128);
        return static_cast<F>(std::ldexp(mant, static_cast<int>(exp))) + static_cast<F>(rest.get_d());
    }
}

/// Sign of x + s * sqrt(d) for d > 0 and s = +-1.
int surd_sign(const Rational& x, int s, const Rational& d)
{
    const int sx = sgn(x);
    if (sx == 0 || sx == s)
        return s;
    // opposite signs: compare x^2 with d
    const int c = cmp(x * x, d);
    return c > 0 ? sx : (c < 0 ? s : 0);
}

}  // namespace

Rational tetra_discriminant(const TetraParams& p)
{
    const Rational d = one_minus_a_one_minus_b(p);
    return d * d - 16 * p.alpha * p.beta;
}

std::vector<std::string> vanishing_factors(const TetraParams& p)
{
    std::vector<std::string> out;
    if (p.alpha == 0)
        out.push_back("α");
    if (p.beta == 0)
        out.push_back("β");
    if (p.alpha * p.beta == 1)
        out.push_back("1−αβ");
    if (p.beta * p.beta == 1)
        out.push_back("1−β²");
    if (p.alpha * p.alpha == 1)
        out.push_back("1−α²");
    if (tetra_discriminant(p) == 0)
        out.push_back("(1−α)²(1−β)²−16αβ");
    return out;
}

DegeneracyError::DegeneracyError(std::vector<std::string> factors)
    : std::domain_error("genericity violated: " + join(factors) + " = 0"),
      factors_(std::move(factors))
{
}

std::array<Quadric, 4> family(const TetraParams& p)
{
    const Rational& a = p.alpha;
    const Rational& b = p.beta;
    return {Quadric(RatMatrix::diagonal({1, -b, -b, 1}), "Q1"),
            Quadric(RatMatrix::diagonal({1, 1, -b, -b}), "Q2"),
            Quadric(RatMatrix::diagonal({-a, 1, 1, -a}), "Q3"),
            Quadric(RatMatrix::diagonal({-a, -a, 1, 1}), "Q4")};
}

RatMatrix tangency_system(const TetraParams& p)
{
    const auto qs = family(p);
    RatMatrix m(4, 6);
    for (std::size_t j = 0; j < 4; ++j) {
        // diagonal quadrics give diagonal tangency forms
        const RatMatrix form = tangency_form(qs[j], 1);
        for (std::size_t i = 0; i < 6; ++i)
            m(j, i) = form(i, i);
    }
    return m;
}

RatMatrix eliminated_system(const TetraParams& p)
{
    const Rational& a = p.alpha;
    const Rational& b = p.beta;
    const Rational d = one_minus_a_one_minus_b(p);
    return RatMatrix{{-b, -b, d, 0, 0, 0},
                     {0, 0, a, -b, 0, 0},
                     {0, 0, 0, -b, a, 0},
                     {0, 0, 0, 0, a, -b}};
}

std::vector<SignedRadicalSolution> enumerate(const TetraParams& p)
{
    if (auto bad = vanishing_factors(p); !bad.empty())
        throw DegeneracyError(std::move(bad));

    const Rational& a = p.alpha;
    const Rational& b = p.beta;
    const Rational d = one_minus_a_one_minus_b(p);
    std::vector<SignedRadicalSolution> out;
    out.reserve(32);

    auto for_signs = [](auto&& fn) {
        for (int g01 : {1, -1})
            for (int g03 : {1, -1})
                for (int g12 : {1, -1})
                    fn(std::array<int, 3>{g01, g03, g12});
    };

    for (int case_id : {1, 2})
        for_signs([&](std::array<int, 3> g) {
            SignedRadicalSolution s;
            s.case_id = case_id;
            s.signs = g;
            s.coords[0] = rational_radical(g[0], b / d);
            s.coords[1] = constant(case_id == 1 ? 0 : 1);
            s.coords[2] = rational_radical(g[1], b / d);
            s.coords[3] = rational_radical(g[2], a / d);
            s.coords[4] = constant(case_id == 1 ? 1 : 0);
            s.coords[5] = rational_radical(-g[0] * g[1] * g[2], a / d);
            out.push_back(s);
        });

    // x = p01^2 solves 4a x^2 - d x + b = 0, x = (d +- sqrt(disc)) / (8a)
    const Rational ratio = a / b;
    for (int branch : {0, 1}) {
        const QuadSurd x{d / (8 * a), Rational(branch == 0 ? 1 : -1) / (8 * a)};
        for_signs([&](std::array<int, 3> g) {
            SignedRadicalSolution s;
            s.case_id = 3;
            s.signs = g;
            s.branch = branch;
            s.coords[0] = RadicalCoord{g[0], {1, 0}, {x}};
            s.coords[1] = constant(1);
            s.coords[2] = RadicalCoord{g[1], {1, 0}, {x}};
            s.coords[3] = RadicalCoord{g[2], {1, 0}, {x, {ratio, 0}}};
            // p13 = p01 p23 + p03 p12 = 2 g03 g12 x sqrt(a/b)
            s.coords[4] = RadicalCoord{g[1] * g[2], {2 * x.x, 2 * x.y}, {{ratio, 0}}};
            s.coords[5] = RadicalCoord{g[0] * g[1] * g[2], {1, 0}, {x, {ratio, 0}}};
            out.push_back(s);
        });
    }
    return out;
}

template <typename F>
std::array<std::complex<F>, 6> instantiate(const SignedRadicalSolution& s, const TetraParams& p)
{
    using C = std::complex<F>;
    const C sqrt_disc = std::sqrt(C(to_float<F>(tetra_discriminant(p))));
    std::array<C, 6> v;
    for (std::size_t i = 0; i < 6; ++i) {
        const RadicalCoord& rc = s.coords[i];
        C val = static_cast<F>(rc.sign) * eval<F>(rc.coeff, sqrt_disc);
        for (const auto& r : rc.radicands)
            val *= std::sqrt(eval<F>(r, sqrt_disc));
        v[i] = val;
    }
    return v;
}

template std::array<std::complex<double>, 6> instantiate<double>(const SignedRadicalSolution&,
                                                                  const TetraParams&);
template std::array<std::complex<long double>, 6> instantiate<long double>(
    const SignedRadicalSolution&, const TetraParams&);

Eigen::VectorXcd to_vector(const SignedRadicalSolution& s, const TetraParams& p)
{
    const auto v = instantiate<double>(s, p);
    Eigen::VectorXcd out(6);
    for (int i = 0; i < 6; ++i)
        out(i) = v[static_cast<std::size_t>(i)];
    return out;
}

bool is_real(const SignedRadicalSolution& s, const TetraParams& p)
{
    const Rational& a = p.alpha;
    const Rational& b = p.beta;
    const Rational d = one_minus_a_one_minus_b(p);
    if (s.case_id != 3)
        return sgn(b / d) > 0 && sgn(a / d) > 0;
    const Rational disc = tetra_discriminant(p);
    if (sgn(disc) <= 0 || sgn(a / b) <= 0)
        return false;
    // sign of x = (d + s sqrt(disc)) / (8a)
    const int root_sign = surd_sign(d, s.branch == 0 ? 1 : -1, disc) * sgn(a);
    return root_sign > 0;
}

RealityCount reality_count(const TetraParams& p)
{
    RealityCount c;
    for (const auto& s : enumerate(p))
        (is_real(s, p) ? c.real : c.nonreal) += 1;
    return c;
}

bool below_reality_bound(const Rational& a)
{
    // a < 3 - 2 sqrt 2  <=>  3 - a > 0 and (3 - a)^2 > 8
    const Rational t = 3 - a;
    return sgn(a) > 0 && sgn(t) > 0 && t * t > 8;
}

double ResidualReport::max() const
{
    double m = std::max({linear, plucker, equalities});
    for (double t : tangency)
        m = std::max(m, t);
    return m;
}

namespace {

template <typename F>
ResidualReport residuals(std::array<std::complex<F>, 6> v, const TetraParams& p)
{
    using C = std::complex<F>;
    F norm = 0;
    for (const auto& c : v)
        norm += std::norm(c);
    norm = std::sqrt(norm);
    for (auto& c : v)
        c /= norm;

    const F a = to_float<F>(p.alpha);
    const F b = to_float<F>(p.beta);
    const F d = to_float<F>(one_minus_a_one_minus_b(p));
    const C p01 = v[0], p02 = v[1], p03 = v[2], p12 = v[3], p13 = v[4], p23 = v[5];

    ResidualReport r;
    const C lin = -b * p02 * p02 - b * p13 * p13 + d * p03 * p03;
    r.linear = static_cast<double>(std::abs(lin) / (2 * std::abs(b) + std::abs(d)));
    r.plucker = static_cast<double>(std::abs(p01 * p23 - p02 * p13 + p03 * p12));
    const C e1 = a * p01 * p01, e2 = a * p03 * p03, e3 = b * p12 * p12, e4 = b * p23 * p23;
    const F scale = std::abs(a) + std::abs(b);
    r.equalities = static_cast<double>(
        std::max({std::abs(e1 - e2), std::abs(e2 - e3), std::abs(e3 - e4)}) / scale);

    const auto qs = family(p);
    for (std::size_t j = 0; j < 4; ++j) {
        const RatMatrix form = tangency_form(qs[j], 1);
        C val = 0;
        F fro = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            const F t = to_float<F>(form(i, i));
            val += t * v[i] * v[i];
            fro += t * t;
        }
        r.tangency[j] = static_cast<double>(std::abs(val) / std::sqrt(fro));
    }
    return r;
}

}  // namespace

ResidualReport verify_solution(const SignedRadicalSolution& s, const TetraParams& p, Precision precision)
{
    if (precision == Precision::Extended)
        return residuals<long double>(instantiate<long double>(s, p), p);
    return residuals<double>(instantiate<double>(s, p), p);
}

ResidualReport verify_vector(const Eigen::VectorXcd& v, const TetraParams& p)
{
    std::array<Complex, 6> a;
    for (int i = 0; i < 6; ++i)
        a[static_cast<std::size_t>(i)] = v(i);
    return residuals<double>(a, p);
}

double chordal_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v)
{
    const Eigen::VectorXcd a = u / u.norm();
    const Eigen::VectorXcd b = v / v.norm();
    const Complex inner = b.dot(a);  // conj(b) . a
    const double mag = std::abs(inner);
    const Complex phase = mag == 0 ? Complex(1) : inner / mag;
    // |a - phase b| equals the chordal distance to first order and stays
    // accurate for nearby points
    return (a - phase * b).norm();
}

double min_pairwise_distance(const std::vector<Eigen::VectorXcd>& points)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, chordal_distance(points[i], points[j]));
    return best;
}

}  // namespace tangents
