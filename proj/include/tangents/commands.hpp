#pragma once

// Subcommands of the `tangents` tool. Each returns a process exit code and
// writes to the given streams, so they can be driven from tests directly.
//
// Exit codes: 0 success, 1 verification failed, 2 mathematical degeneracy,
// 3 input error, 4 numerical failure.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tangents/doubling.hpp"
#include "tangents/scene.hpp"

namespace tangents {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitDegenerate = 2,
    kExitInput = 3,
    kExitNumerical = 4,
};

struct GlobalOptions {
    std::uint64_t seed = 42;
    std::optional<double> tol;    // residual tolerance override
    std::string format = "json";  // json | csv
    std::string output;           // empty: document goes to `out`
};

int cmd_counts(std::size_t k, std::size_t n, std::ostream& out, std::ostream& err);
/// One line per row: n, 3*2^(n-1) (k = 1 only) and 2^d * #.
int cmd_counts_table(std::size_t k, std::size_t n_lo, std::size_t n_hi, std::ostream& out,
                     std::ostream& err);

/// The four quadrics of the tetrahedron family as a scene.
Scene tetra_scene(const TetraParams& p);
Certificate tetra_certificate(const TetraParams& p, const Tolerances& tol = {});
int cmd_tetra(const std::string& alpha, const std::string& beta, const GlobalOptions& g,
              std::ostream& out, std::ostream& err);

Certificate track_certificate(const Scene& scene, const SolveReport& report, const Tolerances& tol,
                              std::uint64_t seed);
/// `log_path`, when set, receives one JSON object per tracked path.
int cmd_track(const std::string& scene_path, StartPolicy policy, const GlobalOptions& g,
              const std::string& log_path, std::ostream& out, std::ostream& err);

/// Parses "a,b,c,d" into exactly four positive rationals; throws ParseError.
std::vector<Rational> parse_radii(const std::string& text);
int cmd_doubling(const std::vector<Rational>& radii, const GlobalOptions& g, std::ostream& out,
                 std::ostream& err);

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> failures;
};

/// Re-evaluates a certificate from scratch. `against`, when given, is the
/// scene the certificate is supposed to be about.
VerifyReport verify_certificate(const Certificate& c, const Scene* against = nullptr,
                                std::optional<double> tol = std::nullopt);
int cmd_verify(const std::string& certificate_path, const std::string& scene_path,
               const GlobalOptions& g, std::ostream& out, std::ostream& err);

/// Parses "s1,s2,s3,s4" into four pairwise distinct rationals; throws ParseError.
std::vector<Rational> parse_moment_points(const std::string& text);
int cmd_transversals_tetrahedron(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_transversals_moment(const std::vector<Rational>& s, const GlobalOptions& g,
                            std::ostream& out, std::ostream& err);

}  // namespace tangents
