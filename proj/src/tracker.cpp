#include "tangents/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace tangents {

namespace {

Vec6 to_vec6(const PluckerVector& p)
{
    Vec6 v;
    for (int i = 0; i < 6; ++i)
        v(i) = Complex(p.coords[static_cast<std::size_t>(i)].get_d(), 0.0);
    return v;
}

Mat6 to_mat6(const RatMatrix& m)
{
    Mat6 out;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            out(i, j) = Complex(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d(), 0.0);
    return out;
}

double distance(const Vec6& a, const Vec6& b)
{
    return chordal_distance(Eigen::VectorXcd(a), Eigen::VectorXcd(b));
}

/// H(p,t) and its derivatives for the convex gamma homotopy.
class Homotopy {
public:
    Homotopy(const SquareSystem& start, const SquareSystem& target, Complex gamma)
        : start_(start), target_(target), gamma_(gamma)
    {
    }

    Vec6 value(const Vec6& p, double t) const
    {
        Vec6 h;
        for (int j = 0; j < 5; ++j)
            h(j) = (1 - t) * gamma_ * start_.equations[j].value(p) + t * target_.equations[j].value(p);
        h(5) = target_.equations[5].value(p);
        return h;
    }

    Mat6 jacobian(const Vec6& p, double t) const
    {
        Mat6 jac;
        for (int j = 0; j < 5; ++j)
            jac.row(j) = (1 - t) * gamma_ * start_.equations[j].gradient(p) +
                         t * target_.equations[j].gradient(p);
        jac.row(5) = target_.equations[5].gradient(p);
        return jac;
    }

    Vec6 dt(const Vec6& p) const
    {
        Vec6 d;
        for (int j = 0; j < 5; ++j)
            d(j) = target_.equations[j].value(p) - gamma_ * start_.equations[j].value(p);
        d(5) = 0;
        return d;
    }

    /// dp/dt = -H_p^{-1} H_t
    Vec6 velocity(const Vec6& p, double t) const
    {
        return -jacobian(p, t).partialPivLu().solve(dt(p));
    }

private:
    const SquareSystem& start_;
    const SquareSystem& target_;
    Complex gamma_;
};

struct StepResult {
    bool ok = false;
    Vec6 p;
};

StepResult correct(const Homotopy& h, Vec6 p, double t, const TrackerOptions& o)
{
    for (int it = 0; it < o.max_corrector_iterations; ++it) {
        const Vec6 delta = h.jacobian(p, t).partialPivLu().solve(-h.value(p, t));
        if (!delta.allFinite())
            return {};
        const double rel = delta.norm() / (1 + p.norm());
        if (it == 0 && rel > o.predictor_tol)
            return {};
        p += delta;
        if (rel < o.corrector_tol)
            return {true, p};
    }
    return {};
}

Vec6 predict(const Homotopy& h, const Vec6& p, double t, double dt, Predictor kind)
{
    if (kind == Predictor::Euler)
        return p + dt * h.velocity(p, t);
    const Vec6 k1 = h.velocity(p, t);
    const Vec6 k2 = h.velocity(p + 0.5 * dt * k1, t + 0.5 * dt);
    const Vec6 k3 = h.velocity(p + 0.5 * dt * k2, t + 0.5 * dt);
    const Vec6 k4 = h.velocity(p + dt * k3, t + dt);
    return p + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

TrackedPath track_one(const Homotopy& h, const SquareSystem& target, const Vec6& start,
                      std::size_t index, const TrackerOptions& o)
{
    TrackedPath path;
    path.index = index;
    path.start = start;
    Vec6 p = start;
    double t = 0;
    double step = o.initial_step;
    int successes = 0;

    while (t < 1) {
        if (path.steps + path.rejected >= o.max_steps || step < o.min_step ||
            !(p.norm() < o.divergence_norm)) {
            path.end = p;
            path.status = PathStatus::Diverged;
            return path;
        }
        const double dt = std::min(step, 1 - t);
        const double t_next = (1 - t) <= step ? 1.0 : t + dt;
        const Vec6 guess = predict(h, p, t, t_next - t, o.predictor);
        StepResult c;
        if (guess.allFinite())
            c = correct(h, guess, t_next, o);
        if (c.ok) {
            p = c.p;
            t = t_next;
            ++path.steps;
            if (++successes >= o.grow_after) {
                step = std::min(step * o.grow_factor, o.max_step);
                successes = 0;
            }
        } else {
            step *= 0.5;
            successes = 0;
            ++path.rejected;
        }
    }

    // endpoint refinement on the target system
    for (int it = 0; it < 20; ++it) {
        if (target.residual(p) < o.endpoint_tol)
            break;
        const Vec6 delta = target.jacobian(p).partialPivLu().solve(-target.evaluate(p));
        if (!delta.allFinite())
            break;
        p += delta;
        if (delta.norm() < 1e-15 * p.norm())
            break;
    }
    path.end = p;
    path.residual = target.residual(p);
    const Eigen::JacobiSVD<Mat6> svd(target.jacobian(p));
    const auto& sv = svd.singularValues();
    path.condition = sv(5) > 0 ? sv(0) / sv(5) : std::numeric_limits<double>::infinity();
    path.singular = path.condition > o.singular_condition;
    path.status = p.allFinite() && path.residual < 1e3 * o.endpoint_tol ? PathStatus::Converged
                                                                         : PathStatus::Diverged;
    return path;
}

}  // namespace

Complex PolyEquation::value(const Vec6& p) const
{
    return (p.transpose() * quad * p).value() + (lin.transpose() * p).value() + constant;
}

Eigen::Matrix<Complex, 1, 6> PolyEquation::gradient(const Vec6& p) const
{
    return 2.0 * (quad * p).transpose() + lin.transpose();
}

int PolyEquation::degree() const
{
    if (quad.cwiseAbs().maxCoeff() > 0)
        return 2;
    if (lin.cwiseAbs().maxCoeff() > 0)
        return 1;
    return 0;
}

double PolyEquation::scale() const
{
    const double s = std::sqrt(quad.squaredNorm() + lin.squaredNorm());
    return s > 0 ? s : 1.0;
}

Condition Condition::tangent_to(Quadric q)
{
    Condition c;
    c.kind = Kind::TangentTo;
    c.label = q.label();
    c.quadric = std::move(q);
    return c;
}

Condition Condition::meets(const ProjFlat& line, std::string label)
{
    return meets(dual_of(line), std::move(label));
}

Condition Condition::meets(DualFlat f, std::string label)
{
    Condition c;
    c.kind = Kind::Meets;
    c.flat = std::move(f);
    c.label = std::move(label);
    return c;
}

int TangencySystem::tangency_count() const
{
    return static_cast<int>(std::count_if(conditions.begin(), conditions.end(), [](const Condition& c) {
        return c.kind == Condition::Kind::TangentTo;
    }));
}

int TangencySystem::root_bound() const
{
    return (1 << tangency_count()) * 2;
}

void TangencySystem::validate() const
{
    if (conditions.size() != 4)
        throw DimensionError("tangency system needs exactly 4 conditions, got " +
                             std::to_string(conditions.size()));
    for (const auto& c : conditions) {
        if (c.kind == Condition::Kind::TangentTo && (!c.quadric || c.quadric->n() != 3))
            throw DimensionError("tangency condition needs a quadric in P^3");
        if (c.kind == Condition::Kind::Meets &&
            (!c.flat || c.flat->n() != 3 || c.flat->hyperplanes.cols() != 2))
            throw DimensionError("incidence condition needs a line in P^3");
    }
}

Vec6 SquareSystem::evaluate(const Vec6& p) const
{
    Vec6 v;
    for (int j = 0; j < 6; ++j)
        v(j) = equations[static_cast<std::size_t>(j)].value(p);
    return v;
}

Mat6 SquareSystem::jacobian(const Vec6& p) const
{
    Mat6 m;
    for (int j = 0; j < 6; ++j)
        m.row(j) = equations[static_cast<std::size_t>(j)].gradient(p);
    return m;
}

int SquareSystem::bezout_count() const
{
    int b = 1;
    for (const auto& e : equations)
        b *= std::max(e.degree(), 1);
    return b;
}

double SquareSystem::residual(const Vec6& p) const
{
    const Vec6 unit = p / p.norm();
    double worst = 0;
    for (std::size_t j = 0; j < 5; ++j)
        worst = std::max(worst, std::abs(equations[j].value(unit)) / equations[j].scale());
    return worst;
}

PolyEquation plucker_equation()
{
    PolyEquation e;
    // p01 p23 - p02 p13 + p03 p12
    e.quad(0, 5) = e.quad(5, 0) = 0.5;
    e.quad(1, 4) = e.quad(4, 1) = -0.5;
    e.quad(2, 3) = e.quad(3, 2) = 0.5;
    return e;
}

SquareSystem build_square_system(const TangencySystem& sys, const Vec6& patch)
{
    sys.validate();
    SquareSystem out;
    for (std::size_t j = 0; j < 4; ++j) {
        const Condition& c = sys.conditions[j];
        PolyEquation e;
        if (c.kind == Condition::Kind::TangentTo)
            e.quad = to_mat6(tangency_form(*c.quadric, 1));
        else
            e.lin = to_vec6(dual_plucker(*c.flat));
        out.equations[j] = e;
    }
    out.equations[4] = plucker_equation();
    out.equations[5].lin = patch;
    out.equations[5].constant = -1.0;
    out.patch = patch;
    return out;
}

StartSystem tetra_start(const Vec6& patch, const TetraParams& params)
{
    TangencySystem sys;
    for (auto& q : family(params))
        sys.conditions.push_back(Condition::tangent_to(q));
    StartSystem s{build_square_system(sys, patch), {}};
    for (const auto& sol : enumerate(params)) {
        const Vec6 v = to_vector(sol, params);
        s.solutions.push_back(v / (patch.transpose() * v)(0));
    }
    return s;
}

StartSystem total_degree_start(const SquareSystem& target, std::mt19937_64& rng)
{
    StartSystem s;
    s.system.patch = target.patch;
    s.system.equations[5] = target.equations[5];
    Mat6 lines;
    std::array<int, 5> degrees{};
    for (int j = 0; j < 5; ++j) {
        const Vec6 l = draw_patch(rng);
        lines.row(j) = l.transpose();
        degrees[static_cast<std::size_t>(j)] = std::max(target.equations[static_cast<std::size_t>(j)].degree(), 1);
        PolyEquation e;
        if (degrees[static_cast<std::size_t>(j)] == 2)
            e.quad = l * l.transpose() - target.patch * target.patch.transpose();
        else
            e.lin = l - target.patch;
        s.system.equations[static_cast<std::size_t>(j)] = e;
    }
    lines.row(5) = target.patch.transpose();
    const auto lu = lines.partialPivLu();

    const int total = s.system.bezout_count();
    for (int code = 0; code < total; ++code) {
        Vec6 rhs;
        int rest = code;
        for (int j = 0; j < 5; ++j) {
            if (degrees[static_cast<std::size_t>(j)] == 2) {
                rhs(j) = (rest & 1) ? -1.0 : 1.0;
                rest >>= 1;
            } else {
                rhs(j) = 1.0;
            }
        }
        rhs(5) = 1.0;
        s.solutions.push_back(lu.solve(rhs));
    }
    return s;
}

std::string to_string(PathStatus s)
{
    switch (s) {
    case PathStatus::Converged:
        return "converged";
    case PathStatus::Diverged:
        return "diverged";
    case PathStatus::PathJumpSuspected:
        return "path-jump-suspected";
    }
    return "unknown";
}

Complex draw_gamma(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    return std::polar(1.0, angle(rng));
}

Vec6 draw_patch(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec6 v;
    for (int i = 0; i < 6; ++i) {
        const double re = u(rng);
        const double im = u(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

std::vector<TrackedPath> track(const SquareSystem& start, const std::vector<Vec6>& start_solutions,
                               const SquareSystem& target, const TrackerOptions& options, Complex gamma)
{
    const Homotopy h(start, target, gamma);
    std::vector<TrackedPath> out(start_solutions.size());
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, out.size())));

    auto work = [&](unsigned tid) {
        for (std::size_t i = tid; i < out.size(); i += threads)
            out[i] = track_one(h, target, start_solutions[i], i, options);
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
    }
    return out;
}

std::vector<TrackedPath> track(const SquareSystem& start, const std::vector<Vec6>& start_solutions,
                               const SquareSystem& target, const TrackerOptions& options)
{
    std::mt19937_64 rng(options.seed);
    return track(start, start_solutions, target, options, draw_gamma(rng));
}

std::vector<std::size_t> distinct_endpoints(const std::vector<TrackedPath>& paths, double tol)
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].status != PathStatus::Converged)
            continue;
        const bool dup = std::any_of(keep.begin(), keep.end(), [&](std::size_t j) {
            return distance(paths[i].end, paths[j].end) < tol;
        });
        if (!dup)
            keep.push_back(i);
    }
    return keep;
}

SolveReport solve(const TangencySystem& sys, const TrackerOptions& options, StartPolicy policy)
{
    sys.validate();
    std::mt19937_64 rng(options.seed);
    SolveReport report;
    report.gamma = draw_gamma(rng);
    report.patch = draw_patch(rng);
    report.root_bound = sys.root_bound();
    const SquareSystem target = build_square_system(sys, report.patch);

    if (policy == StartPolicy::Auto)
        policy = sys.tangency_count() == 4 ? StartPolicy::Tetra : StartPolicy::TotalDegree;
    report.policy = policy;
    const StartSystem start =
        policy == StartPolicy::Tetra ? tetra_start(report.patch) : total_degree_start(target, rng);

    report.paths = track(start.system, start.solutions, target, options, report.gamma);

    // endpoints that collide are re-tracked with tighter step control
    std::vector<std::size_t> suspects;
    for (std::size_t i = 0; i < report.paths.size(); ++i)
        for (std::size_t j = i + 1; j < report.paths.size(); ++j)
            if (report.paths[i].status == PathStatus::Converged &&
                report.paths[j].status == PathStatus::Converged &&
                distance(report.paths[i].end, report.paths[j].end) < options.distinct_tol) {
                suspects.push_back(i);
                suspects.push_back(j);
            }
    for (std::size_t i = 0; i < report.paths.size(); ++i)
        if (report.paths[i].status == PathStatus::Diverged)
            suspects.push_back(i);
    std::sort(suspects.begin(), suspects.end());
    suspects.erase(std::unique(suspects.begin(), suspects.end()), suspects.end());

    if (!suspects.empty()) {
        TrackerOptions tight = options;
        tight.max_step /= 10;
        tight.initial_step /= 10;
        tight.predictor_tol /= 10;
        tight.max_steps *= 10;
        std::vector<Vec6> starts;
        for (std::size_t i : suspects)
            starts.push_back(start.solutions[i]);
        auto redo = track(start.system, starts, target, tight, report.gamma);
        for (std::size_t r = 0; r < suspects.size(); ++r) {
            redo[r].index = suspects[r];
            redo[r].retracked = true;
            report.paths[suspects[r]] = redo[r];
        }
        // whatever still collides is flagged rather than counted twice
        for (std::size_t i = 0; i < report.paths.size(); ++i)
            for (std::size_t j = i + 1; j < report.paths.size(); ++j)
                if (report.paths[i].status != PathStatus::Diverged &&
                    report.paths[j].status != PathStatus::Diverged &&
                    distance(report.paths[i].end, report.paths[j].end) < options.distinct_tol) {
                    report.paths[i].status = PathStatus::PathJumpSuspected;
                    report.paths[j].status = PathStatus::PathJumpSuspected;
                }
    }

    report.converged = static_cast<std::size_t>(std::count_if(
        report.paths.begin(), report.paths.end(),
        [](const TrackedPath& p) { return p.status == PathStatus::Converged; }));
    report.distinct = distinct_endpoints(report.paths, options.distinct_tol).size();
    return report;
}

Vec6 normalize_projective(const Vec6& p)
{
    Vec6 v = p / p.norm();
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    const Complex c = v(big);
    return v * (std::abs(c) / c);
}

RealClassification classify_real(const std::vector<TrackedPath>& paths, double tol)
{
    RealClassification out;
    std::vector<std::size_t> complex_ids;
    std::vector<Vec6> normal(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].status != PathStatus::Converged)
            continue;
        normal[i] = normalize_projective(paths[i].end);
        if (normal[i].head<3>().cwiseAbs().maxCoeff() < tol)
            out.at_infinity.push_back(i);
        if (normal[i].imag().cwiseAbs().maxCoeff() < tol)
            out.real.push_back(i);
        else
            complex_ids.push_back(i);
    }
    std::vector<bool> used(paths.size(), false);
    for (std::size_t a : complex_ids) {
        if (used[a])
            continue;
        used[a] = true;
        std::size_t best = paths.size();
        double best_d = tol;
        for (std::size_t b : complex_ids) {
            if (used[b])
                continue;
            // phase-free: ties in the largest coordinate can rotate a and b differently
            const double d = distance(normal[a].conjugate(), normal[b]);
            if (d < best_d) {
                best_d = d;
                best = b;
            }
        }
        if (best == paths.size()) {
            out.unpaired.push_back(a);
        } else {
            used[best] = true;
            out.conjugate_pairs.emplace_back(a, best);
        }
    }
    return out;
}

double match_sets(const std::vector<Vec6>& a, const std::vector<Vec6>& b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    std::vector<bool> used(b.size(), false);
    double worst = 0;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j]) {
                const double d = distance(x, b[j]);
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

}  // namespace tangents
