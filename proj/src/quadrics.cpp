#include "tangents/quadrics.hpp"

#include <cassert>

namespace tangents {

Quadric::Quadric(RatMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label))
{
    if (!matrix_.is_symmetric())
        throw DimensionError("quadric matrix must be square and symmetric");
    if (matrix_.rows() < 2)
        throw DimensionError("quadric matrix must be at least 2x2");
    signature_ = tangents::signature(matrix_);
}

ProjFlat AffineFlat::projective() const
{
    if (directions.rows() != point.size())
        throw DimensionError("affine flat: point and directions disagree on n");
    RatMatrix span(point.size() + 1, directions.cols() + 1);
    span(0, 0) = 1;
    for (std::size_t i = 0; i < point.size(); ++i) {
        span(i + 1, 0) = point[i];
        for (std::size_t j = 0; j < directions.cols(); ++j)
            span(i + 1, j + 1) = directions(i, j);
    }
    return ProjFlat{span};
}

RatMatrix tangency_form(const Quadric& q, std::size_t k)
{
    // k = 0 is allowed: a point is "tangent" exactly when it lies on Q
    if (k + 1 > q.n())
        throw DimensionError("tangency_form: need 0 <= k <= n-1");
    RatMatrix form = exterior_power(q.matrix(), k + 1);
    assert(form.is_symmetric());
    return form;
}

TangencyCheck is_tangent(const Quadric& q, const PluckerVector& p)
{
    if (p.n != q.n())
        throw DimensionError("is_tangent: quadric and plane live in different spaces");
    const RatMatrix form = tangency_form(q, p.k);
    TangencyCheck out;
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        for (std::size_t j = 0; j < p.coords.size(); ++j)
            out.residual += p.coords[i] * form(i, j) * p.coords[j];
    out.tangent = out.residual == 0;
    if (out.tangent) {
        const ProjFlat f = flat_from_plucker(p);
        const RatMatrix restricted = f.span.transpose() * q.matrix() * f.span;
        out.contained = restricted == RatMatrix(restricted.rows(), restricted.cols());
    }
    return out;
}

double tangency_residual(const CplxMatrix& form, const Eigen::VectorXcd& p)
{
    const Complex v = p.transpose() * form * p;
    const double scale = form.norm() * p.squaredNorm();
    return scale == 0 ? std::abs(v) : std::abs(v) / scale;
}

Quadric cylinder(const AffineFlat& u, const Rational& r, std::string label)
{
    if (sgn(r) < 0)
        throw DimensionError("cylinder: radius must be non-negative");
    const std::size_t n = u.n();
    const RatMatrix& d = u.directions;
    if (d.rows() != n)
        throw DimensionError("cylinder: directions must have n rows");
    if (rank(d) != d.cols())
        throw DegenerateFlatError("cylinder: directions are linearly dependent");

    // M = I - D (D^T D)^{-1} D^T projects onto the orthogonal complement of U.
    RatMatrix m = RatMatrix::identity(n);
    if (d.cols() > 0) {
        const RatMatrix gram = d.transpose() * d;
        const LinearSolution inv = solve_linear(gram, RatMatrix::identity(gram.rows()));
        m = m - d * inv.particular * d.transpose();
    }
    RatMatrix a(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        a(i, 0) = u.point[i];
    const RatMatrix ma = m * a;
    const Rational ama = (a.transpose() * ma)(0, 0);

    RatMatrix q(n + 1, n + 1);
    q(0, 0) = ama - r * r;
    for (std::size_t i = 0; i < n; ++i) {
        q(0, i + 1) = -ma(i, 0);
        q(i + 1, 0) = -ma(i, 0);
        for (std::size_t j = 0; j < n; ++j)
            q(i + 1, j + 1) = m(i, j);
    }
    return Quadric(std::move(q), std::move(label));
}

Quadric perturbed_smooth_quadric(std::size_t k, std::size_t n, const Rational& r, const Rational& eps)
{
    if (k < 1 || n < k + 2)
        throw DimensionError("perturbed_smooth_quadric: need 1 <= k <= n-2");
    if (sgn(r) <= 0)
        throw DimensionError("perturbed_smooth_quadric: radius must be positive");
    std::vector<Rational> diag(n + 1, eps);
    diag[0] = -r * r;
    for (std::size_t i = 1; i <= k + 1; ++i)
        diag[i] = 1;
    return Quadric(RatMatrix::diagonal(diag));
}

}  // namespace tangents
