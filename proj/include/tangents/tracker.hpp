#pragma once

// Homotopy continuation for lines in P^3 subject to four conditions, each
// either tangency to a quadric or incidence with a line.
//
// Unknowns are the six Plücker coordinates. The square system is the four
// conditions, the Plücker quadric, and a random complex affine patch c.p = 1.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tangents/tetra32.hpp"

namespace tangents {

using Vec6 = Eigen::Matrix<Complex, 6, 1>;
using Mat6 = Eigen::Matrix<Complex, 6, 6>;

/// p^T Q p + lin . p + constant, with Q symmetric.
struct PolyEquation {
    Mat6 quad = Mat6::Zero();
    Vec6 lin = Vec6::Zero();
    Complex constant = 0;

    Complex value(const Vec6& p) const;
    Eigen::Matrix<Complex, 1, 6> gradient(const Vec6& p) const;
    int degree() const;
    /// Coefficient norm used to scale residuals.
    double scale() const;
};

struct Condition {
    enum class Kind { TangentTo, Meets };
    Kind kind = Kind::TangentTo;
    std::optional<Quadric> quadric;
    std::optional<DualFlat> flat;
    std::string label;

    static Condition tangent_to(Quadric q);
    static Condition meets(const ProjFlat& line, std::string label = {});
    static Condition meets(DualFlat f, std::string label = {});
};

struct TangencySystem {
    std::vector<Condition> conditions;  // exactly four

    int tangency_count() const;
    /// 2^{#tangency} * 2 for lines in P^3.
    int root_bound() const;
    void validate() const;
};

struct SquareSystem {
    std::array<PolyEquation, 6> equations;  // 0-3 conditions, 4 Plücker, 5 patch
    Vec6 patch = Vec6::Zero();

    Vec6 evaluate(const Vec6& p) const;
    Mat6 jacobian(const Vec6& p) const;
    /// Product of the equation degrees.
    int bezout_count() const;
    /// Max over the homogeneous equations of |f(p/|p|)| / scale(f).
    double residual(const Vec6& p) const;
};

PolyEquation plucker_equation();
SquareSystem build_square_system(const TangencySystem& sys, const Vec6& patch);

struct StartSystem {
    SquareSystem system;
    std::vector<Vec6> solutions;
};

/// Closed-form start: the four diagonal tetrahedron quadrics.
StartSystem tetra_start(const Vec6& patch, const TetraParams& params = {Rational(1, 10), Rational(1, 10)});
/// Total-degree start (l_j.p)^{d_j} = (c.p)^{d_j} for the target's degrees.
StartSystem total_degree_start(const SquareSystem& target, std::mt19937_64& rng);

enum class Predictor { Euler, RK4 };

struct TrackerOptions {
    std::uint64_t seed = 42;
    Predictor predictor = Predictor::RK4;
    double initial_step = 0.02;
    double max_step = 0.1;
    double min_step = 1e-14;
    int max_corrector_iterations = 3;
    /// Newton updates must shrink below this (relative to |p|) to accept a step.
    double corrector_tol = 1e-9;
    /// A first Newton update larger than this (relative) rejects the step.
    double predictor_tol = 1e-4;
    int grow_after = 5;
    double grow_factor = 1.5;
    double endpoint_tol = 1e-12;
    double singular_condition = 1e12;
    double divergence_norm = 1e10;
    int max_steps = 200000;
    /// Endpoints closer than this are re-tracked with tighter steps.
    double distinct_tol = 1e-6;
    double real_tol = 1e-8;
    unsigned threads = 0;  // 0: hardware concurrency
};

enum class PathStatus { Converged, Diverged, PathJumpSuspected };

std::string to_string(PathStatus s);

struct TrackedPath {
    std::size_t index = 0;
    Vec6 start = Vec6::Zero();
    Vec6 end = Vec6::Zero();
    PathStatus status = PathStatus::Diverged;
    int steps = 0;
    int rejected = 0;
    double residual = 0;
    double condition = 0;
    bool singular = false;
    bool retracked = false;
};

/// Tracks H(p,t) = (1-t) gamma G(p) + t F(p) from t = 0 to t = 1.
/// The patch rows of both systems must agree.
std::vector<TrackedPath> track(const SquareSystem& start, const std::vector<Vec6>& start_solutions,
                               const SquareSystem& target, const TrackerOptions& options,
                               Complex gamma);

/// Same with gamma drawn from options.seed.
std::vector<TrackedPath> track(const SquareSystem& start, const std::vector<Vec6>& start_solutions,
                               const SquareSystem& target, const TrackerOptions& options);

Complex draw_gamma(std::mt19937_64& rng);
Vec6 draw_patch(std::mt19937_64& rng);

enum class StartPolicy { Auto, Tetra, TotalDegree };

struct SolveReport {
    std::vector<TrackedPath> paths;
    Vec6 patch;
    Complex gamma;
    StartPolicy policy = StartPolicy::Auto;
    int root_bound = 0;
    std::size_t converged = 0;
    std::size_t distinct = 0;
};

/// Builds the square system, picks a start system, tracks, and re-tracks
/// paths whose endpoints collide.
SolveReport solve(const TangencySystem& sys, const TrackerOptions& options,
                  StartPolicy policy = StartPolicy::Auto);

/// Unit norm with the largest-magnitude coordinate made real and positive.
Vec6 normalize_projective(const Vec6& p);

struct RealClassification {
    std::vector<std::size_t> real;
    std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs;
    std::vector<std::size_t> unpaired;     // suspected path jumps
    std::vector<std::size_t> at_infinity;  // lines inside x0 = 0
};

/// Sorts converged endpoints into real ones and complex-conjugate pairs.
RealClassification classify_real(const std::vector<TrackedPath>& paths, double tol = 1e-8);

/// Indices of converged paths whose endpoints are pairwise distinct
/// (first representative kept).
std::vector<std::size_t> distinct_endpoints(const std::vector<TrackedPath>& paths, double tol);

/// Greedy nearest matching; returns the largest matched distance
/// (infinity if the sets differ in size).
double match_sets(const std::vector<Vec6>& a, const std::vector<Vec6>& b);

}  // namespace tangents
