#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "tangents/doubling.hpp"
#include "tangents/tracker.hpp"

using namespace tangents;
using namespace testing_support;

namespace {

TangencySystem four_quadrics(const std::vector<Quadric>& q)
{
    TangencySystem sys;
    for (const auto& x : q)
        sys.conditions.push_back(Condition::tangent_to(x));
    return sys;
}

TangencySystem tetra_system(const TetraParams& p)
{
    const auto f = family(p);
    return four_quadrics({f.begin(), f.end()});
}

// Entries uniform on a 1/1000 grid in [-1, 1], symmetrised.
Quadric random_quadric(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> u(-1000, 1000);
    RatMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            m(i, j) = m(j, i) = rat(u(rng), 1000);
    return Quadric(m);
}

std::vector<Vec6> endpoints(const std::vector<TrackedPath>& paths)
{
    std::vector<Vec6> out;
    for (const auto& p : paths)
        if (p.status == PathStatus::Converged)
            out.push_back(p.end);
    return out;
}

std::vector<Vec6> distinct_ends(const SolveReport& r, double tol = 1e-6)
{
    std::vector<Vec6> out;
    for (std::size_t i : distinct_endpoints(r.paths, tol))
        out.push_back(r.paths[i].end);
    return out;
}

// Max residual of the homogeneous conditions at a unit representative,
// computed from the exact data rather than the square system.
double condition_residual(const TangencySystem& sys, const Vec6& p)
{
    const Eigen::VectorXcd u = Eigen::VectorXcd(p) / p.norm();
    double worst = check_plucker_relations(u, 1, 3);
    for (const auto& c : sys.conditions) {
        if (c.kind == Condition::Kind::TangentTo) {
            worst = std::max(worst, tangency_residual(to_complex(tangency_form(*c.quadric, 1)), u));
        } else {
            const PluckerVector q = dual_plucker(*c.flat);
            Eigen::VectorXcd qc(6);
            for (int i = 0; i < 6; ++i)
                qc(i) = q.coords[static_cast<std::size_t>(i)].get_d();
            worst = std::max(worst, std::abs((qc.transpose() * u).value()) / qc.norm());
        }
    }
    return worst;
}

TrackerOptions single_thread()
{
    TrackerOptions o;
    o.threads = 1;
    return o;
}

}  // namespace

TEST_CASE("square system shape and root bounds")
{
    const TangencySystem t = tetra_system({rat(1, 10), rat(1, 10)});
    CHECK(t.tangency_count() == 4);
    CHECK(t.root_bound() == 32);
    std::mt19937_64 rng(41);
    const SquareSystem s = build_square_system(t, draw_patch(rng));
    CHECK(s.bezout_count() == 32);
    CHECK(s.equations[4].degree() == 2);
    CHECK(s.equations[5].degree() == 1);

    const auto lines = affine_tetrahedron_lines();
    for (std::size_t i = 0; i <= 4; ++i) {
        const TangencySystem d = doubling_system(lines, i, std::vector<Rational>(4, rat(1, 10)));
        CHECK(d.tangency_count() == static_cast<int>(i));
        CHECK(d.root_bound() == (1 << i) * 2);
        CHECK(build_square_system(d, draw_patch(rng)).bezout_count() == (1 << i) * 2);
    }

    TangencySystem short_sys = t;
    short_sys.conditions.pop_back();
    CHECK_THROWS_AS(short_sys.validate(), DimensionError);
    TangencySystem wrong_dim = t;
    wrong_dim.conditions[0] = Condition::tangent_to(Quadric(RatMatrix::identity(5)));
    CHECK_THROWS_AS(wrong_dim.validate(), DimensionError);

    // the Plücker equation is the Klein quadric
    Vec6 p;
    p << 1, 0, 0, 0, 0, 1;
    CHECK(std::abs(plucker_equation().value(p) - Complex(1)) < 1e-15);
}

TEST_CASE("constant homotopy returns its start points")
{
    std::mt19937_64 rng(42);
    const Vec6 patch = draw_patch(rng);
    const StartSystem s = tetra_start(patch);
    REQUIRE(s.solutions.size() == 32);
    for (const auto& x : s.solutions)
        CHECK(s.system.residual(x) < 1e-12);
    const auto paths = track(s.system, s.solutions, s.system, single_thread(), draw_gamma(rng));
    REQUIRE(paths.size() == 32);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        CHECK(paths[i].status == PathStatus::Converged);
        CHECK((paths[i].end - s.solutions[i]).norm() / s.solutions[i].norm() < 1e-12);
    }
}

TEST_CASE("tracking between two closed-form instances reproduces the closed form")
{
    const TetraParams target_params{rat(1, 10), rat(1, 20)};
    const SolveReport r = solve(tetra_system(target_params), single_thread(), StartPolicy::Tetra);
    CHECK(r.converged == 32);
    CHECK(r.distinct == 32);

    std::vector<Vec6> expected;
    for (const auto& s : enumerate(target_params))
        expected.push_back(to_vector(s, target_params));
    CHECK(match_sets(endpoints(r.paths), expected) < 1e-9);

    // same seed, same answer
    const SolveReport again = solve(tetra_system(target_params), single_thread(), StartPolicy::Tetra);
    for (std::size_t i = 0; i < 32; ++i)
        CHECK(again.paths[i].end == r.paths[i].end);

    // and the split across threads does not change anything
    TrackerOptions threaded;
    threaded.threads = 3;
    const SolveReport par = solve(tetra_system(target_params), threaded, StartPolicy::Tetra);
    for (std::size_t i = 0; i < 32; ++i)
        CHECK(par.paths[i].end == r.paths[i].end);
}

TEST_CASE("endpoint sets do not depend on gamma")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 3; ++trial) {
        const TangencySystem sys =
            four_quadrics({random_quadric(rng), random_quadric(rng), random_quadric(rng), random_quadric(rng)});
        const Vec6 patch = draw_patch(rng);
        const StartSystem start = tetra_start(patch);
        const SquareSystem target = build_square_system(sys, patch);
        const auto a = track(start.system, start.solutions, target, single_thread(), draw_gamma(rng));
        const auto b = track(start.system, start.solutions, target, single_thread(), draw_gamma(rng));
        CHECK(endpoints(a).size() == 32);
        CHECK(endpoints(b).size() == 32);
        CHECK(match_sets(endpoints(a), endpoints(b)) < 1e-8);
    }
}

TEST_CASE("round trip A -> B -> A")
{
    std::mt19937_64 rng(44);
    const Vec6 patch = draw_patch(rng);
    const StartSystem a = tetra_start(patch);
    const SquareSystem b =
        build_square_system(four_quadrics({random_quadric(rng), random_quadric(rng), random_quadric(rng),
                                           random_quadric(rng)}),
                            patch);
    const auto forward = track(a.system, a.solutions, b, single_thread(), draw_gamma(rng));
    const auto mid = endpoints(forward);
    REQUIRE(mid.size() == 32);
    const auto back = track(b, mid, a.system, single_thread(), draw_gamma(rng));
    CHECK(match_sets(endpoints(back), a.solutions) < 1e-8);
}

TEST_CASE("reality classification")
{
    SUBCASE("all real at 1/10")
    {
        const SolveReport r = solve(tetra_system({rat(1, 10), rat(1, 10)}), single_thread(), StartPolicy::Tetra);
        const RealClassification c = classify_real(r.paths);
        CHECK(c.real.size() == 32);
        CHECK(c.conjugate_pairs.empty());
        CHECK(c.unpaired.empty());
    }
    SUBCASE("16 real and 8 pairs at 1/5")
    {
        const SolveReport r = solve(tetra_system({rat(1, 5), rat(1, 5)}), single_thread(), StartPolicy::Tetra);
        CHECK(r.distinct == 32);
        const RealClassification c = classify_real(r.paths);
        CHECK(c.real.size() == 16);
        CHECK(c.conjugate_pairs.size() == 8);
        CHECK(c.unpaired.empty());
        for (auto [i, j] : c.conjugate_pairs) {
            const Vec6 a = r.paths[i].end;
            const Vec6 b = r.paths[j].end;
            CHECK(chordal_distance(Eigen::VectorXcd(a.conjugate()), Eigen::VectorXcd(b)) < 1e-8);
        }
    }
    SUBCASE("random real targets pair their non-real endpoints")
    {
        std::mt19937_64 rng(45);
        for (int trial = 0; trial < 5; ++trial) {
            const TangencySystem sys = four_quadrics(
                {random_quadric(rng), random_quadric(rng), random_quadric(rng), random_quadric(rng)});
            TrackerOptions o = single_thread();
            o.seed = 100 + static_cast<std::uint64_t>(trial);
            const SolveReport r = solve(sys, o);
            CHECK(r.distinct == 32);
            const RealClassification c = classify_real(r.paths);
            CHECK(c.unpaired.empty());
            CHECK(c.real.size() + 2 * c.conjugate_pairs.size() == 32);
            CHECK((32 - c.real.size()) % 2 == 0);
            for (const auto& p : r.paths)
                CHECK(condition_residual(sys, p.end) < 1e-9);
        }
    }
    SUBCASE("synthetic endpoints")
    {
        std::vector<TrackedPath> paths(3);
        for (auto& p : paths)
            p.status = PathStatus::Converged;
        paths[0].end << 0, 0, 0, 1, 0, 0;  // p12 only: a line in the plane at infinity
        paths[1].end << 1, Complex(0, 1), 0, 0, 0, 0;
        paths[2].end << 1, 2, 3, 4, 5, 6;
        const RealClassification c = classify_real(paths);
        CHECK(c.at_infinity == std::vector<std::size_t>{0});
        CHECK(c.unpaired == std::vector<std::size_t>{1});
        CHECK(c.real == std::vector<std::size_t>{0, 2});
    }
}

TEST_CASE("four lines give the two transversals")
{
    const auto lines = affine_tetrahedron_lines();
    const TangencySystem sys = doubling_system(lines, 0, {});
    const SolveReport r = solve(sys, single_thread());
    CHECK(r.policy == StartPolicy::TotalDegree);
    CHECK(r.paths.size() == 2);
    CHECK(r.distinct == 2);

    std::vector<ProjFlat> proj;
    for (const auto& l : lines)
        proj.push_back(l.projective());
    const TransversalResult exact = transversals_to_4_lines(proj);
    REQUIRE(exact.rational_solutions.size() == 2);
    std::vector<Vec6> expected;
    for (const auto& p : exact.rational_solutions) {
        Vec6 v;
        for (int i = 0; i < 6; ++i)
            v(i) = p.coords[static_cast<std::size_t>(i)].get_d();
        expected.push_back(v);
    }
    CHECK(match_sets(distinct_ends(r), expected) < 1e-12);
}

TEST_CASE("two cylinders and two lines give eight tangents")
{
    const auto lines = affine_tetrahedron_lines();
    const TangencySystem sys = doubling_system(lines, 2, std::vector<Rational>(4, rat(1, 10)));
    const SolveReport r = solve(sys, single_thread());
    CHECK(r.root_bound == 8);
    CHECK(r.distinct == 8);
    const auto ends = distinct_ends(r);
    std::vector<TrackedPath> kept;
    for (std::size_t i : distinct_endpoints(r.paths, 1e-6))
        kept.push_back(r.paths[i]);
    CHECK(classify_real(kept).real.size() == 8);
    for (const auto& e : ends)
        CHECK(condition_residual(sys, e) < 1e-9);
}

TEST_CASE("doubling stages")
{
    DoublingOptions o;
    o.tracker = single_thread();
    const auto rows = doubling_experiment(o);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i <= 4; ++i) {
        CAPTURE(i);
        CHECK(rows[i].expected == (2 << i));
        CHECK(rows[i].found_real == (2 << i));
        CHECK(rows[i].success);
    }

    DoublingOptions bad;
    bad.radii = {1, 1, 0, 1};
    CHECK_THROWS_AS(doubling_experiment(bad), DimensionError);
    bad.radii = {1, 1, 1};
    CHECK_THROWS_AS(doubling_experiment(bad), DimensionError);
}
