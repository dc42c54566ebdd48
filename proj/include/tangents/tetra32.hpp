#pragma once

// Closed-form common tangent lines to the four diagonal quadrics
//
//   Q1: x0^2 + x3^2 - b (x1^2 + x2^2)    Q2: x0^2 + x1^2 - b (x2^2 + x3^2)
//   Q3: x1^2 + x2^2 - a (x0^2 + x3^2)    Q4: x2^2 + x3^2 - a (x0^2 + x1^2)
//
// which degenerate to the lines of the coordinate tetrahedron at a = b = 0.
// Off the genericity locus there are exactly 32 tangents. They split into
// three cases: p02 = 0 (8 lines), p13 = 0 (8 lines), and p02 p13 != 0
// (16 lines, two per root of 4a x^2 - (1-a)(1-b) x + b = 0 in x = p01^2).

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tangents/quadrics.hpp"

namespace tangents {

struct TetraParams {
    Rational alpha;
    Rational beta;
};

/// The discriminant (1-a)^2 (1-b)^2 - 16 a b of the case-3 quadratic.
Rational tetra_discriminant(const TetraParams& p);

/// Names of the genericity factors that vanish, empty when generic.
std::vector<std::string> vanishing_factors(const TetraParams& p);

class DegeneracyError : public std::domain_error {
public:
    explicit DegeneracyError(std::vector<std::string> factors);
    const std::vector<std::string>& factors() const { return factors_; }

private:
    std::vector<std::string> factors_;
};

std::array<Quadric, 4> family(const TetraParams& p);

/// Rows are the tangency equations of Q1..Q4 as linear forms in
/// (p01^2, p02^2, p03^2, p12^2, p13^2, p23^2).
RatMatrix tangency_system(const TetraParams& p);

/// Reduced form of the tangency system in the variable order
/// (p02^2, p13^2, p03^2, p12^2, p01^2, p23^2).
RatMatrix eliminated_system(const TetraParams& p);

/// Element x + y sqrt(d) of Q(sqrt(d)), d being the case-3 discriminant.
struct QuadSurd {
    Rational x;
    Rational y;
};

/// sign * coeff * prod_i sqrt(radicand_i), square roots taken on the
/// principal branch.
struct RadicalCoord {
    int sign = 1;
    QuadSurd coeff{1, 0};
    std::vector<QuadSurd> radicands;
};

struct SignedRadicalSolution {
    int case_id = 0;                 // 1, 2 or 3
    std::array<int, 3> signs{};      // gamma_01, gamma_03, gamma_12
    int branch = 0;                  // case 3: 0 takes +sqrt(disc), 1 takes -sqrt(disc)
    std::array<RadicalCoord, 6> coords;  // lex order 01 02 03 12 13 23
};

/// All 32 tangent lines. Throws DegeneracyError off the generic locus.
std::vector<SignedRadicalSolution> enumerate(const TetraParams& p);

enum class Precision { Double, Extended };

/// Numeric value of a solution.
template <typename F>
std::array<std::complex<F>, 6> instantiate(const SignedRadicalSolution& s, const TetraParams& p);

Eigen::VectorXcd to_vector(const SignedRadicalSolution& s, const TetraParams& p);

/// Exact reality of one solution.
bool is_real(const SignedRadicalSolution& s, const TetraParams& p);

struct RealityCount {
    int real = 0;
    int nonreal = 0;
};

RealityCount reality_count(const TetraParams& p);

/// 0 < a < 3 - 2 sqrt(2), decided by comparing squares.
bool below_reality_bound(const Rational& a);

struct ResidualReport {
    double linear = 0;      // -b p02^2 - b p13^2 + (1-a)(1-b) p03^2
    double plucker = 0;     // p01 p23 - p02 p13 + p03 p12
    double equalities = 0;  // a p01^2 = a p03^2 = b p12^2 = b p23^2
    std::array<double, 4> tangency{};
    double max() const;
};

/// Evaluates the reduced equations and the four tangency residuals at the
/// unit-normalised numeric instance of a solution.
ResidualReport verify_solution(const SignedRadicalSolution& s, const TetraParams& p,
                               Precision precision = Precision::Double);
/// Same checks on an arbitrary numeric Plücker vector.
ResidualReport verify_vector(const Eigen::VectorXcd& v, const TetraParams& p);

/// Distance between projective points: |a - w b| for unit representatives a, b
/// and the unit phase w that minimises it. Agrees with the chordal distance to
/// first order.
double chordal_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);
double min_pairwise_distance(const std::vector<Eigen::VectorXcd>& points);

}  // namespace tangents
