#include <iostream>

#include <CLI11.hpp>

#include "tangents/commands.hpp"

using namespace tangents;

namespace {

std::pair<std::size_t, std::size_t> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ParseError("expected a range A..B, got " + text);
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Common tangent lines to quadrics: counts, closed forms, tracking, certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GlobalOptions g;
    double tol = 0;
    app.add_option("--seed", g.seed, "Random seed (default 42)");
    auto* tol_opt = app.add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", g.output, "Write the JSON/CSV document to this path");

    // counts
    auto* counts = app.add_subcommand("counts", "Dimension, degree and real-solution totals for G(k,n)");
    counts->fallthrough();
    bool table = false;
    std::vector<std::string> counts_args;
    counts->add_flag("--table", table, "Print the table over a range of n, e.g. --table 1 3..9");
    counts->add_option("args", counts_args, "k n, or k A..B with --table");

    // tetra
    auto* tetra = app.add_subcommand("tetra", "All 32 tangents to the tetrahedron quadric family");
    tetra->fallthrough();
    std::string alpha, beta;
    std::vector<std::string> tetra_args;
    tetra->add_option("--alpha", alpha, "alpha as p/q or decimal");
    tetra->add_option("--beta", beta, "beta as p/q or decimal");
    tetra->add_option("params", tetra_args, "alpha beta");

    // track
    auto* track = app.add_subcommand("track", "Homotopy continuation on a scene file");
    track->fallthrough();
    std::string scene_path, log_path, start = "auto";
    track->add_option("scene", scene_path, "Scene JSON")->required();
    track->add_option("--start", start, "Start system")
        ->check(CLI::IsMember({"auto", "tetra", "total-degree"}));
    track->add_option("--log", log_path, "Per-path JSON-lines log");

    // doubling
    auto* doubling = app.add_subcommand("doubling", "Replace tetrahedron lines by cylinders, i = 0..4");
    doubling->fallthrough();
    bool auto_radii = false;
    std::string radii_text;
    auto* auto_flag = doubling->add_flag("--auto", auto_radii, "Search radii by halving");
    auto* radii_opt = doubling->add_option("--radii", radii_text, "Four radii r1,r2,r3,r4");
    auto_flag->excludes(radii_opt);

    // verify
    auto* verify = app.add_subcommand("verify", "Re-check a certificate from scratch");
    verify->fallthrough();
    std::string certificate_path, against_path;
    verify->add_option("certificate", certificate_path, "Certificate JSON")->required();
    verify->add_option("--scene", against_path, "Scene the certificate must match");

    // transversals
    auto* transversals = app.add_subcommand("transversals", "Exact common transversals to four lines");
    transversals->fallthrough();
    bool tetrahedron = false;
    std::string moment_text;
    auto* tet_flag = transversals->add_flag("--tetrahedron", tetrahedron, "Lines of the coordinate tetrahedron");
    auto* moment_opt = transversals->add_option("--moment", moment_text, "Tangent lines to the twisted cubic at s1,s2,s3,s4");
    tet_flag->excludes(moment_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    if (*tol_opt)
        g.tol = tol;

    auto& out = std::cout;
    auto& err = std::cerr;
    try {
        if (*counts) {
            if (table) {
                std::size_t k = 1, lo = 3, hi = 9;
                if (counts_args.size() >= 1)
                    k = std::stoul(counts_args[0]);
                if (counts_args.size() >= 2)
                    std::tie(lo, hi) = parse_range(counts_args[1]);
                return cmd_counts_table(k, lo, hi, out, err);
            }
            if (counts_args.size() != 2) {
                err << "error: counts needs k and n\n";
                return kExitInput;
            }
            return cmd_counts(std::stoul(counts_args[0]), std::stoul(counts_args[1]), out, err);
        }
        if (*tetra) {
            if (alpha.empty() && !tetra_args.empty())
                alpha = tetra_args[0];
            if (beta.empty() && tetra_args.size() >= 2)
                beta = tetra_args[1];
            if (alpha.empty() || beta.empty()) {
                err << "error: tetra needs alpha and beta\n";
                return kExitInput;
            }
            return cmd_tetra(alpha, beta, g, out, err);
        }
        if (*track) {
            const StartPolicy policy = start == "tetra"          ? StartPolicy::Tetra
                                       : start == "total-degree" ? StartPolicy::TotalDegree
                                                                 : StartPolicy::Auto;
            return cmd_track(scene_path, policy, g, log_path, out, err);
        }
        if (*doubling) {
            if (!auto_radii && radii_text.empty()) {
                err << "error: doubling needs --auto or --radii\n";
                return kExitInput;
            }
            return cmd_doubling(auto_radii ? std::vector<Rational>{} : parse_radii(radii_text), g, out,
                                err);
        }
        if (*verify)
            return cmd_verify(certificate_path, against_path, g, out, err);
        if (*transversals) {
            if (tetrahedron)
                return cmd_transversals_tetrahedron(g, out, err);
            if (moment_text.empty()) {
                err << "error: transversals needs --tetrahedron or --moment\n";
                return kExitInput;
            }
            return cmd_transversals_moment(parse_moment_points(moment_text), g, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "error: number out of range: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
