#pragma once

// Plücker coordinates of k-planes in P^n, incidence with (n-k-1)-planes,
// Grassmannian counts, and exact line transversals in P^3.

#include <optional>
#include <string>
#include <vector>

#include "tangents/exactnum.hpp"

namespace tangents {

/// A k-plane in P^n spanned by the columns of an (n+1) x (k+1) matrix.
struct ProjFlat {
    RatMatrix span;
    std::size_t n() const { return span.rows() - 1; }
    std::size_t k() const { return span.cols() - 1; }
};

/// An (n-k-1)-plane cut out by k+1 hyperplanes; the columns hold the
/// hyperplane coefficient vectors.
struct DualFlat {
    RatMatrix hyperplanes;
    std::size_t n() const { return hyperplanes.rows() - 1; }
    std::size_t k() const { return hyperplanes.cols() - 1; }
};

class DegenerateFlatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact Plücker vector; coords are indexed by the (k+1)-subsets of
/// {0..n} in lexicographic order.
struct PluckerVector {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<Rational> coords;

    const Rational& operator[](std::string_view label) const;
    friend bool operator==(const PluckerVector&, const PluckerVector&) = default;
};

/// Index label of a subset, e.g. {0,1,3} -> "013". Only valid for n <= 9.
std::string subset_label(const std::vector<std::size_t>& subset);
std::vector<std::string> plucker_labels(std::size_t k, std::size_t n);

/// Scales so the first nonzero coordinate is +1.
PluckerVector normalized(PluckerVector p);
bool proportional(const PluckerVector& a, const PluckerVector& b);

PluckerVector plucker(const ProjFlat& f);
PluckerVector dual_plucker(const DualFlat& f);

/// Hyperplanes containing a flat, i.e. a dual description of it.
DualFlat dual_of(const ProjFlat& f);
/// Columns spanning the common zero set of the hyperplanes.
ProjFlat span_of(const DualFlat& f);

/// Recovers a spanning matrix from a decomposable Plücker vector.
ProjFlat flat_from_plucker(const PluckerVector& p);

/// Values of every quadratic Plücker relation
///   sum_l (-1)^l p[I \ i_l] p[J + i_l],  |I| = k+2, |J| = k,
/// over strictly increasing I, J. All vanish iff p is decomposable.
std::vector<Rational> plucker_relation_values(const PluckerVector& p);
/// Largest absolute relation value; zero iff p lies on the Grassmannian.
Rational check_plucker_relations(const PluckerVector& p);

/// Numeric variant: max-abs relation value of the unit-normalised vector.
double check_plucker_relations(const Eigen::VectorXcd& p, std::size_t k, std::size_t n);

/// sum_I p_I q_I for a Plücker vector p and a dual Plücker vector q.
Rational incidence(const PluckerVector& p, const PluckerVector& q);

/// Rank test [span U | span V] < n+1, i.e. U and V meet in P^n.
bool flats_meet(const ProjFlat& u, const ProjFlat& v);

struct Counts {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t dim = 0;
    BigInt degree;
    BigInt total;
};

Counts counts(std::size_t k, std::size_t n);
BigInt catalan(unsigned long m);

// ---- lines in P^3 -------------------------------------------------------

/// p01 p23 - p02 p13 + p03 p12 for a G(1,3) vector.
Rational klein_quadric(const PluckerVector& p);

/// The homogeneous quadratic A a^2 + 2B ab + C b^2 = 0 obtained by restricting
/// the Plücker quadric to the pencil a*u + b*w of solutions to the incidence
/// system. Roots live in Q(sqrt(B^2 - AC)).
struct TransversalResult {
    enum class Kind { Finite, InfiniteFamily, None };
    Kind kind = Kind::None;
    std::size_t incidence_rank = 0;
    PluckerVector u, w;
    Rational a, b, c;
    Rational discriminant;  // B^2 - AC
    /// Number of distinct transversals (0, 1 or 2) when finite.
    int count = 0;
    bool real = false;
    /// Exact solutions when the roots are rational (including every real case
    /// where the discriminant is a perfect square).
    std::vector<PluckerVector> rational_solutions;
    /// Numeric solutions (unit norm), always filled for Finite results.
    std::vector<Eigen::VectorXcd> numeric_solutions;
    /// Exact coordinates x + y*sqrt(discriminant) for each root, per coordinate.
    struct SurdCoord {
        Rational x, y;
    };
    std::vector<std::vector<SurdCoord>> surd_solutions;
};

TransversalResult transversals_to_4_lines(const std::vector<ProjFlat>& lines);

/// Exact check that x + y sqrt(d) coordinates satisfy sum_I coeff_I p_I = 0.
bool surd_linear_vanishes(const std::vector<TransversalResult::SurdCoord>& p,
                          const std::vector<Rational>& coeff);
/// Exact check that a surd Plücker vector satisfies the G(1,3) relation.
bool surd_klein_vanishes(const std::vector<TransversalResult::SurdCoord>& p,
                         const Rational& d);

/// Projective (n-2)-flat osculating s -> (s, s^2, ..., s^n) at s, spanned by
/// (1, gamma(s)) and the derivative directions (0, gamma^(j)(s)), j=1..n-2.
/// For n = 3 this is the tangent line.
ProjFlat moment_osculating_flat(std::size_t n, const Rational& s);

/// Lines of the coordinate tetrahedron: x0=x3=0, x0=x1=0, x1=x2=0, x2=x3=0.
std::vector<ProjFlat> tetrahedron_lines();

}  // namespace tangents
