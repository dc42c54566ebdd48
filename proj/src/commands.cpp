#include "tangents/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tangents {

namespace {

// Writes the document to --output when given (summary to `out`), else to `out`.
int emit(const std::string& document, const std::string& summary, const GlobalOptions& g,
         std::ostream& out, std::ostream& err)
{
    if (g.output.empty()) {
        out << document;
        if (!document.empty() && document.back() != '\n')
            out << '\n';
        return kExitOk;
    }
    std::ofstream file(g.output);
    if (!file) {
        err << "error: cannot write " << g.output << '\n';
        return kExitInput;
    }
    file << document;
    if (!document.empty() && document.back() != '\n')
        file << '\n';
    out << summary;
    return kExitOk;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    return parts;
}

bool numerically_real(const Eigen::VectorXcd& p, double tol)
{
    const Vec6 v = normalize_projective(Vec6(p));
    return v.imag().cwiseAbs().maxCoeff() < tol;
}

std::string format_certificate(const Certificate& c, const GlobalOptions& g)
{
    if (g.format == "csv")
        return to_csv(c);
    return to_json(c).dump(2);
}

std::string certificate_summary(const Certificate& c)
{
    std::ostringstream s;
    s << "solutions=" << c.solutions.size() << " real=" << c.real_count
      << " nonreal=" << c.nonreal_count << " root_bound=" << c.root_bound << '\n';
    return s.str();
}

Tolerances tolerances_from(const GlobalOptions& g)
{
    Tolerances t;
    if (g.tol)
        t.residual = *g.tol;
    return t;
}

}  // namespace

// ---- counts ---------------------------------------------------------------

int cmd_counts(std::size_t k, std::size_t n, std::ostream& out, std::ostream& err)
{
    if (k < 1 || k + 2 > n) {
        err << "error: counts needs 1 <= k <= n-2\n";
        return kExitInput;
    }
    const Counts c = counts(k, n);
    out << "dim=" << c.dim << " degree=" << c.degree.get_str() << " total=" << c.total.get_str()
        << '\n';
    return kExitOk;
}

int cmd_counts_table(std::size_t k, std::size_t n_lo, std::size_t n_hi, std::ostream& out,
                     std::ostream& err)
{
    if (n_lo > n_hi || k < 1 || k + 2 > n_lo) {
        err << "error: table range must satisfy 1 <= k <= lo-2 and lo <= hi\n";
        return kExitInput;
    }
    std::ostringstream row_n, row_bound, row_total;
    row_n << "n";
    row_bound << "3*2^(n-1)";
    row_total << "2^d*#";
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        const Counts c = counts(k, n);
        row_n << ' ' << n;
        row_bound << ' ' << BigInt(BigInt(3) << static_cast<mp_bitcnt_t>(n - 1)).get_str();
        row_total << ' ' << c.total.get_str();
    }
    out << row_n.str() << '\n';
    if (k == 1)
        out << row_bound.str() << '\n';
    out << row_total.str() << '\n';
    return kExitOk;
}

// ---- tetra ----------------------------------------------------------------

Scene tetra_scene(const TetraParams& p)
{
    Scene s;
    s.n = 3;
    for (const auto& q : family(p))
        s.quadrics.push_back(q);
    return s;
}

Certificate tetra_certificate(const TetraParams& p, const Tolerances& tol)
{
    Certificate c;
    c.source = "tetra";
    c.scene = tetra_scene(p);
    c.scene_hash = scene_hash(c.scene);
    c.params = p;
    c.tolerances = tol;
    c.root_bound = 32;
    std::size_t index = 0;
    for (const auto& s : enumerate(p)) {
        CertificateSolution cs;
        cs.index = index++;
        cs.plucker = to_vector(s, p);
        cs.real = is_real(s, p);
        cs.residual = scene_residual(c.scene, cs.plucker);
        cs.case_id = s.case_id;
        cs.signs = s.signs;
        cs.branch = s.branch;
        (cs.real ? c.real_count : c.nonreal_count)++;
        c.solutions.push_back(std::move(cs));
    }
    return c;
}

int cmd_tetra(const std::string& alpha, const std::string& beta, const GlobalOptions& g,
              std::ostream& out, std::ostream& err)
{
    TetraParams p;
    try {
        p = {parse_rational(alpha), parse_rational(beta)};
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    try {
        const Certificate c = tetra_certificate(p, tolerances_from(g));
        return emit(format_certificate(c, g), certificate_summary(c), g, out, err);
    } catch (const DegeneracyError& e) {
        err << "degenerate parameters: vanishing factor";
        for (const auto& f : e.factors())
            err << ' ' << f;
        err << '\n';
        return kExitDegenerate;
    }
}

// ---- track ----------------------------------------------------------------

Certificate track_certificate(const Scene& scene, const SolveReport& report, const Tolerances& tol,
                              std::uint64_t seed)
{
    Certificate c;
    c.source = "track";
    c.scene = scene;
    c.scene.seed = seed;
    c.scene_hash = scene_hash(scene);
    c.seed = seed;
    c.tolerances = tol;
    c.root_bound = report.root_bound;
    std::size_t index = 0;
    for (std::size_t i : distinct_endpoints(report.paths, tol.distinct)) {
        const TrackedPath& path = report.paths[i];
        CertificateSolution cs;
        cs.index = index++;
        cs.plucker = normalize_projective(path.end);
        cs.real = numerically_real(cs.plucker, tol.real);
        cs.residual = scene_residual(scene, cs.plucker);
        cs.status = to_string(path.status);
        cs.steps = path.steps;
        cs.condition = path.condition;
        (cs.real ? c.real_count : c.nonreal_count)++;
        c.solutions.push_back(std::move(cs));
    }
    return c;
}

int cmd_track(const std::string& scene_path, StartPolicy policy, const GlobalOptions& g,
              const std::string& log_path, std::ostream& out, std::ostream& err)
{
    Scene scene;
    TangencySystem sys;
    try {
        scene = scene_from_json(read_json_file(scene_path));
        sys = scene.to_system();
        sys.validate();
    } catch (const std::exception& e) {
        err << "error: malformed scene: " << e.what() << '\n';
        return kExitInput;
    }
    if (policy == StartPolicy::Tetra && sys.tangency_count() != 4) {
        err << "error: the tetra start needs four quadrics\n";
        return kExitInput;
    }

    TrackerOptions opts;
    opts.seed = g.seed;
    const SolveReport report = solve(sys, opts, policy);
    const Certificate c = track_certificate(scene, report, tolerances_from(g), g.seed);

    if (!log_path.empty()) {
        std::ofstream log(log_path);
        if (!log) {
            err << "error: cannot write " << log_path << '\n';
            return kExitInput;
        }
        for (const auto& path : report.paths)
            log << json{{"index", path.index},
                        {"status", to_string(path.status)},
                        {"steps", path.steps},
                        {"rejected", path.rejected},
                        {"residual", path.residual},
                        {"condition", path.condition},
                        {"singular", path.singular},
                        {"retracked", path.retracked},
                        {"end", numeric_plucker_to_json(path.end)}}
                       .dump()
                << '\n';
    }

    const int rc = emit(format_certificate(c, g), certificate_summary(c), g, out, err);
    const std::size_t failed = report.paths.size() - report.converged;
    if (rc != kExitOk)
        return rc;
    if (failed > 0) {
        err << "numerical failure: " << failed << " of " << report.paths.size()
            << " paths did not converge\n";
        return kExitNumerical;
    }
    return kExitOk;
}

// ---- doubling -------------------------------------------------------------

std::vector<Rational> parse_radii(const std::string& text)
{
    std::vector<Rational> radii;
    for (const auto& part : split_commas(text))
        radii.push_back(parse_rational(part));
    if (radii.size() != 4)
        throw ParseError("expected four radii, got " + std::to_string(radii.size()));
    for (const auto& r : radii)
        if (sign(r) <= 0)
            throw ParseError("radii must be > 0, got " + to_string(r));
    return radii;
}

int cmd_doubling(const std::vector<Rational>& radii, const GlobalOptions& g, std::ostream& out,
                 std::ostream& err)
{
    DoublingOptions opts;
    opts.tracker.seed = g.seed;
    opts.radii = radii;
    std::vector<DoublingRow> rows;
    try {
        rows = doubling_experiment(opts);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    std::ostringstream doc;
    if (g.format == "csv") {
        doc << "i,expected,found_real,found_distinct,nonreal,r1,r2,r3,r4,halvings\n";
        for (const auto& row : rows) {
            doc << row.i << ',' << row.expected << ',' << row.found_real << ','
                << row.found_distinct << ',' << row.nonreal;
            for (std::size_t j = 0; j < 4; ++j)
                doc << ',' << (j < row.radii.size() ? to_string(row.radii[j]) : "");
            doc << ',' << row.halvings << '\n';
        }
    } else {
        json arr = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (const auto& x : row.radii)
                r.push_back(to_string(x));
            arr.push_back({{"i", row.i},
                           {"expected", row.expected},
                           {"found_real", row.found_real},
                           {"found_distinct", row.found_distinct},
                           {"nonreal", row.nonreal},
                           {"radii", r},
                           {"halvings", row.halvings},
                           {"success", row.success}});
        }
        doc << json{{"seed", g.seed}, {"rows", arr}}.dump(2) << '\n';
    }

    std::ostringstream table;
    table << "i expected found_real radii\n";
    for (const auto& row : rows) {
        table << row.i << ' ' << row.expected << ' ' << row.found_real << ' ';
        for (std::size_t j = 0; j < row.radii.size(); ++j)
            table << (j ? "," : "") << to_string(row.radii[j]);
        table << '\n';
    }
    // the human-readable table goes to the terminal; the full rows to --output
    if (g.output.empty()) {
        out << table.str();
        return kExitOk;
    }
    return emit(doc.str(), table.str(), g, out, err);
}

// ---- verify ---------------------------------------------------------------

VerifyReport verify_certificate(const Certificate& c, const Scene* against,
                                std::optional<double> tol)
{
    VerifyReport r;
    auto fail = [&](std::string msg) {
        r.pass = false;
        r.failures.push_back(std::move(msg));
    };
    const double residual_tol = tol.value_or(c.tolerances.residual);

    const std::string recomputed_hash = scene_hash(c.scene);
    if (recomputed_hash != c.scene_hash)
        fail("scene hash mismatch: certificate records " + c.scene_hash + ", embedded scene hashes to " +
             recomputed_hash);
    if (against && scene_hash(*against) != c.scene_hash)
        fail("scene hash mismatch: certificate is for " + c.scene_hash + ", given scene is " +
             scene_hash(*against));

    int real = 0;
    std::vector<Eigen::VectorXcd> points;
    for (const auto& s : c.solutions) {
        const std::string name = "solution " + std::to_string(s.index);
        if (s.plucker.size() != 6 || !s.plucker.allFinite() || s.plucker.norm() == 0) {
            fail(name + ": invalid Plücker vector");
            continue;
        }
        const double res = scene_residual(c.scene, s.plucker);
        if (!(res <= residual_tol)) {
            std::ostringstream m;
            m << name << ": residual " << res << " exceeds tolerance " << residual_tol;
            fail(m.str());
        } else if (!(res <= 10 * std::max(s.residual, 1e-16))) {
            std::ostringstream m;
            m << name << ": residual " << res << " not reproducible (recorded " << s.residual << ")";
            fail(m.str());
        }
        const bool is_real_now = numerically_real(s.plucker, c.tolerances.real);
        if (is_real_now != s.real)
            fail(name + ": reality flag says " + (s.real ? "real" : "non-real") +
                 " but the vector is " + (is_real_now ? "real" : "non-real"));
        real += s.real ? 1 : 0;
        points.push_back(s.plucker);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (chordal_distance(points[i], points[j]) < c.tolerances.distinct)
                fail("solutions " + std::to_string(c.solutions[i].index) + " and " +
                     std::to_string(c.solutions[j].index) + " coincide");

    const int total = static_cast<int>(c.solutions.size());
    if (real != c.real_count || total - real != c.nonreal_count)
        fail("counts summary disagrees with the solution list");
    if (c.root_bound > 0 && total > c.root_bound)
        fail("more solutions than the root bound");
    return r;
}

int cmd_verify(const std::string& certificate_path, const std::string& scene_path,
               const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    Certificate c;
    std::optional<Scene> against;
    try {
        c = certificate_from_json(read_json_file(certificate_path));
        if (!scene_path.empty())
            against = scene_from_json(read_json_file(scene_path));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    const VerifyReport r = verify_certificate(c, against ? &*against : nullptr, g.tol);
    for (const auto& f : r.failures)
        out << "FAIL " << f << '\n';
    out << (r.pass ? "PASS" : "FAIL") << ' ' << c.solutions.size() << " solutions checked\n";
    return r.pass ? kExitOk : kExitVerifyFailed;
}

// ---- transversals ---------------------------------------------------------

std::vector<Rational> parse_moment_points(const std::string& text)
{
    std::vector<Rational> s;
    for (const auto& part : split_commas(text))
        s.push_back(parse_rational(part));
    if (s.size() != 4)
        throw ParseError("expected four points, got " + std::to_string(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j])
                throw ParseError("points must be distinct (" + to_string(s[i]) + " repeats)");
    return s;
}

namespace {

int report_transversals(const std::vector<ProjFlat>& lines, const GlobalOptions& g,
                        std::ostream& out, std::ostream& err)
{
    const TransversalResult t = transversals_to_4_lines(lines);
    const char* kind = t.kind == TransversalResult::Kind::Finite           ? "finite"
                       : t.kind == TransversalResult::Kind::InfiniteFamily ? "infinite"
                                                                           : "none";
    std::ostringstream summary;
    summary << "kind=" << kind << " count=" << t.count << " real=" << (t.real ? t.count : 0)
            << " discriminant=" << to_string(t.discriminant) << '\n';
    for (const auto& p : t.rational_solutions) {
        const PluckerVector v = normalized(p);
        const auto labels = plucker_labels(1, 3);
        summary << "  line:";
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (sign(v.coords[i]) != 0)
                summary << " p" << labels[i] << '=' << to_string(v.coords[i]);
        summary << '\n';
    }

    std::string document;
    if (g.format == "csv") {
        std::ostringstream d;
        d.precision(17);
        d << "index,exact,p01_re,p01_im,p02_re,p02_im,p03_re,p03_im,p12_re,p12_im,p13_re,p13_im,"
             "p23_re,p23_im\n";
        for (std::size_t i = 0; i < t.numeric_solutions.size(); ++i) {
            d << i << ',' << (i < t.rational_solutions.size() ? 1 : 0);
            for (Eigen::Index c = 0; c < 6; ++c)
                d << ',' << t.numeric_solutions[i](c).real() << ','
                  << t.numeric_solutions[i](c).imag();
            d << '\n';
        }
        document = d.str();
    } else {
        json exact = json::array();
        for (const auto& p : t.rational_solutions)
            exact.push_back(to_json(normalized(p)));
        json numeric = json::array();
        for (const auto& p : t.numeric_solutions)
            numeric.push_back(numeric_plucker_to_json(p));
        json lines_json = json::array();
        for (const auto& l : lines)
            lines_json.push_back(to_json(LabeledFlat{l, ""}));
        document = json{{"kind", kind},
                        {"incidence_rank", t.incidence_rank},
                        {"count", t.count},
                        {"real", t.real},
                        {"discriminant", to_string(t.discriminant)},
                        {"lines", lines_json},
                        {"exact_solutions", exact},
                        {"numeric_solutions", numeric}}
                       .dump(2);
    }
    if (g.output.empty()) {
        out << summary.str();
        return kExitOk;
    }
    return emit(document, summary.str(), g, out, err);
}

}  // namespace

int cmd_transversals_tetrahedron(const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    return report_transversals(tetrahedron_lines(), g, out, err);
}

int cmd_transversals_moment(const std::vector<Rational>& s, const GlobalOptions& g,
                            std::ostream& out, std::ostream& err)
{
    std::vector<ProjFlat> lines;
    for (const auto& x : s)
        lines.push_back(moment_osculating_flat(3, x));
    return report_transversals(lines, g, out, err);
}

}  // namespace tangents
