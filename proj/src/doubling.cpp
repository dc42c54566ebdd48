#include "tangents/doubling.hpp"

namespace tangents {

namespace {

AffineFlat edge(const std::array<int, 3>& a, const std::array<int, 3>& b)
{
    AffineFlat f;
    f.directions = RatMatrix(3, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        f.point.push_back(a[i]);
        f.directions(i, 0) = b[i] - a[i];
    }
    return f;
}

DoublingRow run_stage(const std::vector<AffineFlat>& lines, std::size_t i,
                      const std::vector<Rational>& radii, const TrackerOptions& options)
{
    DoublingRow row;
    row.i = i;
    row.expected = (1 << i) * 2;
    row.radii.assign(radii.begin(), radii.begin() + static_cast<std::ptrdiff_t>(i));
    row.report = solve(doubling_system(lines, i, radii), options, StartPolicy::TotalDegree);

    const auto keep = distinct_endpoints(row.report.paths, options.distinct_tol);
    std::vector<TrackedPath> distinct;
    for (std::size_t k : keep)
        distinct.push_back(row.report.paths[k]);
    const RealClassification cls = classify_real(distinct, options.real_tol);
    row.found_distinct = static_cast<int>(distinct.size());
    row.found_real = static_cast<int>(cls.real.size());
    row.nonreal = row.found_distinct - row.found_real;
    row.success = row.found_real == row.expected && row.found_distinct == row.expected;
    return row;
}

}  // namespace

std::vector<AffineFlat> affine_tetrahedron_lines()
{
    const std::array<int, 3> v0{1, 1, 1}, v1{1, -1, -1}, v2{-1, 1, -1}, v3{-1, -1, 1};
    // images of x0=x3=0, x0=x1=0, x1=x2=0, x2=x3=0
    return {edge(v1, v2), edge(v2, v3), edge(v0, v3), edge(v0, v1)};
}

TangencySystem doubling_system(const std::vector<AffineFlat>& lines, std::size_t i,
                               const std::vector<Rational>& radii)
{
    if (lines.size() != 4 || i > 4 || radii.size() < i)
        throw DimensionError("doubling_system: need 4 lines and a radius per cylinder");
    TangencySystem sys;
    for (std::size_t j = 0; j < 4; ++j) {
        const std::string label = "U" + std::to_string(j + 1);
        if (j < i) {
            if (sgn(radii[j]) <= 0)
                throw DimensionError("cylinder radius must be positive");
            sys.conditions.push_back(Condition::tangent_to(cylinder(lines[j], radii[j], "Cy" + label)));
        } else {
            sys.conditions.push_back(Condition::meets(lines[j].projective(), label));
        }
    }
    return sys;
}

std::vector<DoublingRow> doubling_experiment(const DoublingOptions& options)
{
    const auto lines = affine_tetrahedron_lines();
    std::vector<DoublingRow> rows;
    if (!options.radii.empty()) {
        if (options.radii.size() != 4)
            throw DimensionError("doubling: expected 4 radii");
        for (const auto& r : options.radii)
            if (sgn(r) <= 0)
                throw DimensionError("doubling: radii must be positive");
        for (std::size_t i = 0; i <= 4; ++i)
            rows.push_back(run_stage(lines, i, options.radii, options.tracker));
        return rows;
    }

    for (std::size_t i = 0; i <= 4; ++i) {
        Rational r = options.initial_radius;
        DoublingRow best;
        for (int h = 0; h <= options.max_halvings; ++h) {
            DoublingRow row = run_stage(lines, i, std::vector<Rational>(4, r), options.tracker);
            row.halvings = h;
            const bool better = h == 0 || row.found_real > best.found_real;
            if (better)
                best = std::move(row);
            if (best.success || i == 0)
                break;
            r /= 2;
        }
        rows.push_back(std::move(best));
    }
    return rows;
}

}  // namespace tangents
