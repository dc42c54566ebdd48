#pragma once

#include <string>

#include "tangents/grassmann.hpp"

namespace tangents {

/// A quadric x^T Q x = 0 in P^n, stored with its symmetric matrix.
class Quadric {
public:
    explicit Quadric(RatMatrix matrix, std::string label = {});

    std::size_t n() const { return matrix_.rows() - 1; }
    const RatMatrix& matrix() const { return matrix_; }
    const Signature& signature() const { return signature_; }
    const std::string& label() const { return label_; }

private:
    RatMatrix matrix_;
    Signature signature_;
    std::string label_;
};

/// A k-flat in R^n as a point plus a basis of directions (n x k).
struct AffineFlat {
    std::vector<Rational> point;
    RatMatrix directions;

    std::size_t n() const { return point.size(); }
    std::size_t k() const { return directions.cols(); }
    /// Homogenises via x -> (1, x) and directions d -> (0, d).
    ProjFlat projective() const;
};

/// wedge^{k+1} Q: the quadratic form on Plücker space whose zero set is the
/// set of k-planes tangent to Q. k = 0 gives Q itself.
RatMatrix tangency_form(const Quadric& q, std::size_t k);

struct TangencyCheck {
    Rational residual;  // p^T (wedge^{k+1} Q) p
    bool tangent = false;
    /// The plane lies inside the quadric. Such planes are algebraically
    /// tangent but are not honest tangents.
    bool contained = false;
};

TangencyCheck is_tangent(const Quadric& q, const PluckerVector& p);

/// |p^T T p| / (||T||_F ||p||^2) for a numeric Plücker vector.
double tangency_residual(const CplxMatrix& form, const Eigen::VectorXcd& p);

/// Points at Euclidean distance r from the affine flat u, as a quadric in P^n.
Quadric cylinder(const AffineFlat& u, const Rational& r, std::string label = {});

/// -r^2 x0^2 + x1^2 + ... + x_{k+1}^2 + eps (x_{k+2}^2 + ... + x_n^2).
Quadric perturbed_smooth_quadric(std::size_t k, std::size_t n, const Rational& r,
                                 const Rational& eps = Rational(1, 1000));

}  // namespace tangents
