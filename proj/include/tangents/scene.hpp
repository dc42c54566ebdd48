#pragma once

// JSON forms of rationals, matrices, flats, Plücker vectors, scenes and
// certificates. Rationals are written as "p/q" strings; matrices as nested
// row arrays; Plücker coordinates are keyed by index labels such as "013"
// and always listed in lexicographic subset order.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tangents/quadrics.hpp"
#include "tangents/tracker.hpp"

namespace tangents {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Accepts "p/q" strings, decimal strings, or JSON numbers (read through their
/// shortest decimal spelling, so 0.1 becomes 1/10).
Rational rational_from_json(const json& j);
json to_json(const Rational& r);

RatMatrix matrix_from_json(const json& j);
json to_json(const RatMatrix& m);

json to_json(const PluckerVector& p);
PluckerVector plucker_from_json(const json& j);

/// {"01":[re,im], ...}
json numeric_plucker_to_json(const Eigen::VectorXcd& p);
Eigen::VectorXcd numeric_plucker_from_json(const json& j);

struct LabeledFlat {
    std::variant<ProjFlat, DualFlat> flat;
    std::string label;

    std::size_t n() const;
    /// Dual description of the flat, computing it from the span if needed.
    DualFlat dual() const;
};

json to_json(const LabeledFlat& f);
LabeledFlat flat_from_json(const json& j);

json to_json(const Quadric& q);
Quadric quadric_from_json(const json& j);

struct Scene {
    std::size_t n = 3;
    std::vector<Quadric> quadrics;
    std::vector<LabeledFlat> flats;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;

    /// Dimensions agree and labels are unique; throws ParseError otherwise.
    void validate() const;
    /// Quadrics become tangency conditions and flats incidence conditions,
    /// in file order.
    TangencySystem to_system() const;
};

json to_json(const Scene& s);
Scene scene_from_json(const json& j);

/// Hash of the canonical serialisation of the geometry (metadata excluded).
std::string scene_hash(const Scene& s);

/// Max over tangency residuals, incidence residuals and the Plücker relation
/// at the unit-normalised vector.
double scene_residual(const Scene& s, const Eigen::VectorXcd& p);

struct CertificateSolution {
    std::size_t index = 0;
    Eigen::VectorXcd plucker;
    bool real = false;
    double residual = 0;
    // closed-form fields (tetra certificates)
    int case_id = 0;
    std::array<int, 3> signs{};
    int branch = 0;
    // tracker fields (track certificates)
    std::string status;
    int steps = 0;
    double condition = 0;
};

struct Tolerances {
    double residual = 1e-9;
    double distinct = 1e-6;
    double real = 1e-8;
};

struct Certificate {
    std::string source;  // "tetra" or "track"
    Scene scene;
    std::string scene_hash;
    std::optional<TetraParams> params;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::vector<CertificateSolution> solutions;
    int root_bound = 0;
    int real_count = 0;
    int nonreal_count = 0;
};

json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

/// Fixed CSV layout: index,case,g01,g03,g12,branch,real,residual,
/// then re/im pairs for p01 p02 p03 p12 p13 p23.
std::string to_csv(const Certificate& c);

}  // namespace tangents
