#include "tangents/scene.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace tangents {

Rational rational_from_json(const json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(BigInt(j.dump()));
    if (j.is_number_float())
        return parse_rational(j.dump());
    throw ParseError("expected a rational, got " + j.dump());
}

json to_json(const Rational& r)
{
    return to_string(r);
}

RatMatrix matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty())
        throw ParseError("matrix must be a non-empty array of non-empty rows");
    RatMatrix m(j.size(), j.front().size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols())
            throw ParseError("matrix rows must all have " + std::to_string(m.cols()) + " entries");
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(i, c) = rational_from_json(j[i][c]);
    }
    return m;
}

json to_json(const RatMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(to_string(m(i, c)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const PluckerVector& p)
{
    json coords = json::object();
    const auto labels = plucker_labels(p.k, p.n);
    for (std::size_t i = 0; i < labels.size(); ++i)
        coords[labels[i]] = to_string(p.coords[i]);
    return {{"k", p.k}, {"n", p.n}, {"coords", coords}};
}

PluckerVector plucker_from_json(const json& j)
{
    PluckerVector p;
    p.k = j.at("k").get<std::size_t>();
    p.n = j.at("n").get<std::size_t>();
    if (p.n > 9 || p.k >= p.n)
        throw ParseError("Plücker vector: unsupported (k, n)");
    for (const auto& label : plucker_labels(p.k, p.n))
        p.coords.push_back(j.at("coords").contains(label) ? rational_from_json(j["coords"][label])
                                                          : Rational(0));
    return p;
}

json numeric_plucker_to_json(const Eigen::VectorXcd& p)
{
    if (p.size() != 6)
        throw DimensionError("numeric Plücker vectors are stored for lines in P^3 only");
    json out = json::object();
    const auto labels = plucker_labels(1, 3);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const Complex c = p(static_cast<Eigen::Index>(i));
        out[labels[i]] = json::array({c.real(), c.imag()});
    }
    return out;
}

Eigen::VectorXcd numeric_plucker_from_json(const json& j)
{
    const auto labels = plucker_labels(1, 3);
    Eigen::VectorXcd p(6);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const json& c = j.at(labels[i]);
        if (!c.is_array() || c.size() != 2)
            throw ParseError("Plücker coordinate " + labels[i] + " must be [re, im]");
        p(static_cast<Eigen::Index>(i)) = Complex(c[0].get<double>(), c[1].get<double>());
    }
    return p;
}

std::size_t LabeledFlat::n() const
{
    return std::visit([](const auto& f) { return f.n(); }, flat);
}

DualFlat LabeledFlat::dual() const
{
    if (const auto* d = std::get_if<DualFlat>(&flat))
        return *d;
    return dual_of(std::get<ProjFlat>(flat));
}

json to_json(const LabeledFlat& f)
{
    json j;
    if (const auto* s = std::get_if<ProjFlat>(&f.flat)) {
        j["kind"] = "span";
        j["matrix"] = to_json(s->span);
    } else {
        j["kind"] = "dual";
        j["matrix"] = to_json(std::get<DualFlat>(f.flat).hyperplanes);
    }
    j["label"] = f.label;
    return j;
}

LabeledFlat flat_from_json(const json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    RatMatrix m = matrix_from_json(j.at("matrix"));
    LabeledFlat f;
    f.label = j.value("label", "");
    if (kind == "span")
        f.flat = ProjFlat{std::move(m)};
    else if (kind == "dual")
        f.flat = DualFlat{std::move(m)};
    else
        throw ParseError("flat kind must be \"span\" or \"dual\", got \"" + kind + "\"");
    return f;
}

json to_json(const Quadric& q)
{
    return {{"n", q.n()}, {"matrix", to_json(q.matrix())}, {"label", q.label()}};
}

Quadric quadric_from_json(const json& j)
{
    RatMatrix m = matrix_from_json(j.at("matrix"));
    if (j.contains("n") && j["n"].get<std::size_t>() + 1 != m.rows())
        throw ParseError("quadric: \"n\" disagrees with the matrix size");
    try {
        return Quadric(std::move(m), j.value("label", ""));
    } catch (const DimensionError& e) {
        throw ParseError(e.what());
    }
}

void Scene::validate() const
{
    std::set<std::string> labels;
    auto check_label = [&](const std::string& label) {
        if (!label.empty() && !labels.insert(label).second)
            throw ParseError("duplicate label \"" + label + "\"");
    };
    for (const auto& q : quadrics) {
        if (q.n() != n)
            throw ParseError("quadric " + q.label() + " is not in P^" + std::to_string(n));
        check_label(q.label());
    }
    for (const auto& f : flats) {
        if (f.n() != n)
            throw ParseError("flat " + f.label + " is not in P^" + std::to_string(n));
        check_label(f.label);
    }
}

TangencySystem Scene::to_system() const
{
    if (n != 3)
        throw ParseError("tracking needs a scene in P^3");
    if (quadrics.size() + flats.size() != 4)
        throw ParseError("tracking needs exactly 4 conditions (quadrics + flats), got " +
                         std::to_string(quadrics.size() + flats.size()));
    TangencySystem sys;
    for (const auto& q : quadrics)
        sys.conditions.push_back(Condition::tangent_to(q));
    for (const auto& f : flats) {
        DualFlat d = f.dual();
        if (d.hyperplanes.cols() != 2)
            throw ParseError("flat " + f.label + " is not a line");
        sys.conditions.push_back(Condition::meets(std::move(d), f.label));
    }
    return sys;
}

namespace {

json geometry_json(const Scene& s)
{
    json quadrics = json::array();
    for (const auto& q : s.quadrics)
        quadrics.push_back(to_json(q));
    json flats = json::array();
    for (const auto& f : s.flats)
        flats.push_back(to_json(f));
    return {{"n", s.n}, {"quadrics", quadrics}, {"flats", flats}};
}

}  // namespace

json to_json(const Scene& s)
{
    json j = geometry_json(s);
    j["metadata"] = {{"seed", s.seed}, {"tool_version", s.tool_version}};
    return j;
}

Scene scene_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("scene must be a JSON object");
    Scene s;
    s.n = j.value("n", std::size_t{3});
    if (j.contains("quadrics"))
        for (const auto& q : j.at("quadrics"))
            s.quadrics.push_back(quadric_from_json(q));
    if (j.contains("flats"))
        for (const auto& f : j.at("flats"))
            s.flats.push_back(flat_from_json(f));
    if (j.contains("metadata")) {
        s.seed = j["metadata"].value("seed", std::uint64_t{0});
        s.tool_version = j["metadata"].value("tool_version", std::string(kToolVersion));
    }
    s.validate();
    return s;
}

std::string scene_hash(const Scene& s)
{
    const std::string text = geometry_json(s).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double scene_residual(const Scene& s, const Eigen::VectorXcd& p)
{
    const Eigen::VectorXcd unit = p / p.norm();
    double worst = check_plucker_relations(unit, 1, 3);
    for (const auto& q : s.quadrics)
        worst = std::max(worst, tangency_residual(to_complex(tangency_form(q, 1)), unit));
    for (const auto& f : s.flats) {
        const PluckerVector q = dual_plucker(f.dual());
        Eigen::VectorXcd qc(6);
        for (int i = 0; i < 6; ++i)
            qc(i) = q.coords[static_cast<std::size_t>(i)].get_d();
        worst = std::max(worst, std::abs((qc.transpose() * unit).value()) / qc.norm());
    }
    return worst;
}

json to_json(const Certificate& c)
{
    json sols = json::array();
    for (const auto& s : c.solutions) {
        json js = {{"index", s.index},
                   {"plucker", numeric_plucker_to_json(s.plucker)},
                   {"real", s.real},
                   {"residual", s.residual}};
        if (c.source == "tetra") {
            js["case"] = s.case_id;
            js["signs"] = s.signs;
            js["branch"] = s.branch;
        } else {
            js["status"] = s.status;
            js["steps"] = s.steps;
            js["condition"] = s.condition;
        }
        sols.push_back(js);
    }
    json j = {{"format", "tangent-lines-certificate"},
              {"version", 1},
              {"tool_version", kToolVersion},
              {"source", c.source},
              {"index_order", "lex"},
              {"scene", to_json(c.scene)},
              {"scene_hash", c.scene_hash},
              {"seed", c.seed},
              {"tolerances",
               {{"residual", c.tolerances.residual},
                {"distinct", c.tolerances.distinct},
                {"real", c.tolerances.real}}},
              {"counts",
               {{"solutions", c.solutions.size()},
                {"real", c.real_count},
                {"nonreal", c.nonreal_count},
                {"root_bound", c.root_bound}}},
              {"solutions", sols}};
    if (c.params)
        j["params"] = {{"alpha", to_string(c.params->alpha)}, {"beta", to_string(c.params->beta)}};
    return j;
}

Certificate certificate_from_json(const json& j)
{
    if (!j.is_object() || j.value("format", "") != "tangent-lines-certificate")
        throw ParseError("not a tangent-lines certificate");
    Certificate c;
    c.source = j.at("source").get<std::string>();
    c.scene = scene_from_json(j.at("scene"));
    c.scene_hash = j.at("scene_hash").get<std::string>();
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("params"))
        c.params = TetraParams{rational_from_json(j["params"].at("alpha")),
                               rational_from_json(j["params"].at("beta"))};
    const json& tol = j.at("tolerances");
    c.tolerances.residual = tol.value("residual", c.tolerances.residual);
    c.tolerances.distinct = tol.value("distinct", c.tolerances.distinct);
    c.tolerances.real = tol.value("real", c.tolerances.real);
    const json& counts = j.at("counts");
    c.real_count = counts.value("real", 0);
    c.nonreal_count = counts.value("nonreal", 0);
    c.root_bound = counts.value("root_bound", 0);
    for (const auto& js : j.at("solutions")) {
        CertificateSolution s;
        s.index = js.at("index").get<std::size_t>();
        s.plucker = numeric_plucker_from_json(js.at("plucker"));
        s.real = js.at("real").get<bool>();
        s.residual = js.at("residual").get<double>();
        s.case_id = js.value("case", 0);
        if (js.contains("signs"))
            s.signs = js["signs"].get<std::array<int, 3>>();
        s.branch = js.value("branch", 0);
        s.status = js.value("status", "");
        s.steps = js.value("steps", 0);
        s.condition = js.value("condition", 0.0);
        c.solutions.push_back(std::move(s));
    }
    return c;
}

std::string to_csv(const Certificate& c)
{
    std::ostringstream out;
    out.precision(17);
    out << "index,case,g01,g03,g12,branch,real,residual";
    for (const auto& label : plucker_labels(1, 3))
        out << ",p" << label << "_re,p" << label << "_im";
    out << '\n';
    for (const auto& s : c.solutions) {
        out << s.index << ',' << s.case_id << ',' << s.signs[0] << ',' << s.signs[1] << ','
            << s.signs[2] << ',' << s.branch << ',' << (s.real ? 1 : 0) << ',' << s.residual;
        for (Eigen::Index i = 0; i < s.plucker.size(); ++i)
            out << ',' << s.plucker(i).real() << ',' << s.plucker(i).imag();
        out << '\n';
    }
    return out.str();
}

}  // namespace tangents
