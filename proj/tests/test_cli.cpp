#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tangents/commands.hpp"

using namespace tangents;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

template <typename F>
Run run(F&& f)
{
    std::ostringstream out, err;
    Run r;
    r.code = f(out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "tangents-cli-tests";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const json& j)
{
    std::ofstream(p) << j.dump(2);
}

json read(const fs::path& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

json tetra_json(const std::string& a, const std::string& b)
{
    GlobalOptions g;
    const Run r = run([&](auto& o, auto& e) { return cmd_tetra(a, b, g, o, e); });
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

json line_flat(std::vector<std::vector<long>> hyperplanes_or_span, const std::string& kind,
               const std::string& label)
{
    json m = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        json row = json::array();
        for (const auto& col : hyperplanes_or_span)
            row.push_back(col[i]);
        m.push_back(row);
    }
    return {{"kind", kind}, {"matrix", m}, {"label", label}};
}

}  // namespace

TEST_CASE("counts")
{
    Run r = run([](auto& o, auto& e) { return cmd_counts(1, 3, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out == "dim=4 degree=2 total=32\n");
    r = run([](auto& o, auto& e) { return cmd_counts(1, 9, o, e); });
    CHECK(r.out.find("total=93716480") != std::string::npos);
    r = run([](auto& o, auto& e) { return cmd_counts_table(1, 3, 9, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out ==
          "n 3 4 5 6 7 8 9\n"
          "3*2^(n-1) 12 24 48 96 192 384 768\n"
          "2^d*# 32 320 3584 43008 540672 7028736 93716480\n");
    CHECK(run([](auto& o, auto& e) { return cmd_counts(2, 3, o, e); }).code == kExitInput);
    CHECK(run([](auto& o, auto& e) { return cmd_counts(0, 3, o, e); }).code == kExitInput);
}

TEST_CASE("tetra certificates")
{
    const json c = tetra_json("1/10", "1/20");
    CHECK(c["counts"]["solutions"] == 32);
    CHECK(c["counts"]["real"] == 32);
    CHECK(c["params"]["alpha"] == "1/10");
    CHECK(c["index_order"] == "lex");
    for (const auto& s : c["solutions"])
        CHECK(s["residual"].get<double>() < 1e-12);

    const json fifth = tetra_json("1/5", "1/5");
    CHECK(fifth["counts"]["real"] == 16);
    CHECK(fifth["counts"]["nonreal"] == 16);

    // decimals are exact: 0.1 is 1/10
    CHECK(tetra_json("0.1", "0.05")["scene_hash"] == c["scene_hash"]);

    GlobalOptions g;
    Run r = run([&](auto& o, auto& e) { return cmd_tetra("1", "1/10", g, o, e); });
    CHECK(r.code == kExitDegenerate);
    CHECK(r.err.find("1−α²") != std::string::npos);
    r = run([&](auto& o, auto& e) { return cmd_tetra("abc", "1/10", g, o, e); });
    CHECK(r.code == kExitInput);

    g.format = "csv";
    r = run([&](auto& o, auto& e) { return cmd_tetra("1/10", "1/10", g, o, e); });
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "index,case,g01,g03,g12,branch,real,residual,p01_re,p01_im,p02_re,p02_im,p03_re,p03_im,"
          "p12_re,p12_im,p13_re,p13_im,p23_re,p23_im");
    int rows = 0;
    for (std::string line; std::getline(lines, line);)
        ++rows;
    CHECK(rows == 32);
}

TEST_CASE("certificate JSON round-trips")
{
    const json c = tetra_json("1/10", "1/20");
    const Certificate parsed = certificate_from_json(c);
    CHECK(to_json(parsed) == c);
    CHECK(verify_certificate(parsed).pass);

    const Scene s = scene_from_json(c["scene"]);
    CHECK(to_json(s)["quadrics"] == c["scene"]["quadrics"]);
    Scene reseeded = s;
    reseeded.seed = 99;
    CHECK(scene_hash(reseeded) == scene_hash(s));

    const PluckerVector p{1, 3, {rat(1, 2), 0, 0, 0, 0, rat(-3, 4)}};
    const json pj = to_json(p);
    CHECK(pj["coords"]["01"] == "1/2");
    CHECK(plucker_from_json(pj).coords == p.coords);
}

TEST_CASE("verify")
{
    const fs::path cert = scratch("fresh.json");
    write(cert, tetra_json("1/10", "1/20"));
    GlobalOptions g;
    Run r = run([&](auto& o, auto& e) { return cmd_verify(cert.string(), "", g, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    SUBCASE("one coordinate perturbed by 1e-3")
    {
        json bad = read(cert);
        bad["solutions"][7]["plucker"]["03"][0] = bad["solutions"][7]["plucker"]["03"][0].get<double>() + 1e-3;
        const fs::path p = scratch("perturbed.json");
        write(p, bad);
        r = run([&](auto& o, auto& e) { return cmd_verify(p.string(), "", g, o, e); });
        CHECK(r.code == kExitVerifyFailed);
        CHECK(r.out.find("solution 7:") != std::string::npos);
        CHECK(r.out.find("solution 6:") == std::string::npos);
    }
    SUBCASE("wrong scene")
    {
        const fs::path other = scratch("other-scene.json");
        write(other, tetra_json("1/10", "1/10")["scene"]);
        r = run([&](auto& o, auto& e) { return cmd_verify(cert.string(), other.string(), g, o, e); });
        CHECK(r.code == kExitVerifyFailed);
        CHECK(r.out.find("scene hash mismatch") != std::string::npos);

        const fs::path same = scratch("same-scene.json");
        write(same, read(cert)["scene"]);
        r = run([&](auto& o, auto& e) { return cmd_verify(cert.string(), same.string(), g, o, e); });
        CHECK(r.code == 0);
    }
    SUBCASE("edited scene inside the certificate")
    {
        json bad = read(cert);
        bad["scene"]["quadrics"][0]["matrix"][1][1] = "-1/19";
        const Certificate c = certificate_from_json(bad);
        const VerifyReport v = verify_certificate(c);
        CHECK_FALSE(v.pass);
        CHECK(v.failures.front().find("scene hash") != std::string::npos);
    }
    SUBCASE("flags, counts and duplicates")
    {
        json bad = read(cert);
        bad["solutions"][3]["real"] = false;
        VerifyReport v = verify_certificate(certificate_from_json(bad));
        CHECK_FALSE(v.pass);

        bad = read(cert);
        bad["counts"]["real"] = 31;
        CHECK_FALSE(verify_certificate(certificate_from_json(bad)).pass);

        bad = read(cert);
        bad["solutions"][1]["plucker"] = bad["solutions"][0]["plucker"];
        v = verify_certificate(certificate_from_json(bad));
        CHECK_FALSE(v.pass);
        CHECK(v.failures.back().find("coincide") != std::string::npos);
    }
    SUBCASE("recorded residual must be reproducible")
    {
        json bad = read(cert);
        bad["solutions"][0]["residual"] = 0.0;
        bad["solutions"][0]["plucker"]["01"][0] = bad["solutions"][0]["plucker"]["01"][0].get<double>() + 1e-11;
        const VerifyReport v = verify_certificate(certificate_from_json(bad));
        CHECK_FALSE(v.pass);
        CHECK(v.failures.front().find("not reproducible") != std::string::npos);
    }
    SUBCASE("unreadable input")
    {
        const fs::path junk = scratch("junk.json");
        std::ofstream(junk) << "{not json";
        r = run([&](auto& o, auto& e) { return cmd_verify(junk.string(), "", g, o, e); });
        CHECK(r.code == kExitInput);
    }
}

TEST_CASE("track")
{
    GlobalOptions g;

    SUBCASE("tetra scene matches the closed form")
    {
        const json closed = tetra_json("1/10", "1/10");
        const fs::path scene = scratch("tetra-scene.json");
        write(scene, closed["scene"]);
        const fs::path log = scratch("paths.jsonl");
        Run r = run([&](auto& o, auto& e) { return cmd_track(scene.string(), StartPolicy::Auto, g, log.string(), o, e); });
        REQUIRE(r.code == 0);
        const json tracked = json::parse(r.out);
        CHECK(tracked["counts"]["solutions"] == 32);
        CHECK(tracked["counts"]["real"] == 32);
        CHECK(tracked["scene_hash"] == closed["scene_hash"]);

        std::vector<Vec6> a, b;
        for (const auto& s : tracked["solutions"])
            a.push_back(Vec6(numeric_plucker_from_json(s["plucker"])));
        for (const auto& s : closed["solutions"])
            b.push_back(Vec6(numeric_plucker_from_json(s["plucker"])));
        CHECK(match_sets(a, b) < 1e-9);

        std::ifstream in(log);
        int lines = 0;
        for (std::string line; std::getline(in, line); ++lines)
            CHECK(json::parse(line)["status"] == "converged");
        CHECK(lines == 32);

        // deterministic per seed
        const Run again = run([&](auto& o, auto& e) { return cmd_track(scene.string(), StartPolicy::Auto, g, "", o, e); });
        CHECK(again.out == r.out);
        CHECK(verify_certificate(certificate_from_json(tracked)).pass);
    }
    SUBCASE("four lines")
    {
        json scene{{"n", 3},
                   {"quadrics", json::array()},
                   {"flats",
                    {line_flat({{0, 1, 0, 0}, {0, 0, 1, 0}}, "span", "l1"),
                     line_flat({{0, 0, 1, 0}, {0, 0, 0, 1}}, "span", "l2"),
                     line_flat({{0, 1, 0, 0}, {0, 0, 1, 0}}, "dual", "l3"),  // x1 = x2 = 0
                     line_flat({{1, 0, 0, 0}, {0, 1, 0, 0}}, "span", "l4")}}};
        const fs::path p = scratch("lines.json");
        write(p, scene);
        const Run r = run([&](auto& o, auto& e) { return cmd_track(p.string(), StartPolicy::Auto, g, "", o, e); });
        REQUIRE(r.code == 0);
        const json c = json::parse(r.out);
        CHECK(c["counts"]["solutions"] == 2);
        CHECK(c["counts"]["root_bound"] == 2);
    }
    SUBCASE("two cylinders and two lines")
    {
        const auto lines = affine_tetrahedron_lines();
        Scene s;
        s.quadrics.push_back(cylinder(lines[0], rat(1, 10), "C1"));
        s.quadrics.push_back(cylinder(lines[1], rat(1, 10), "C2"));
        s.flats.push_back({lines[2].projective(), "U3"});
        s.flats.push_back({lines[3].projective(), "U4"});
        const fs::path p = scratch("cylinders.json");
        write(p, to_json(s));
        const Run r = run([&](auto& o, auto& e) { return cmd_track(p.string(), StartPolicy::Auto, g, "", o, e); });
        REQUIRE(r.code == 0);
        const json c = json::parse(r.out);
        CHECK(c["counts"]["solutions"] == 8);
        CHECK(c["counts"]["real"] == 8);
    }
    SUBCASE("malformed scenes")
    {
        const std::vector<json> bad{
            json::array(),
            {{"n", 3}, {"quadrics", {{{"matrix", {{1, 2}, {3}}}}}}},
            {{"n", 3}, {"quadrics", {{{"matrix", {{1, 2}, {3, 4}}}}}}},
            {{"n", 4}, {"quadrics", json::array()}},
            {{"n", 3}, {"flats", {{{"kind", "plane"}, {"matrix", {{1}}}}}}},
            {{"n", 3}, {"quadrics", {{{"matrix", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, "x"}}}}}}},
        };
        int i = 0;
        for (const auto& scene : bad) {
            const fs::path p = scratch("bad" + std::to_string(i++) + ".json");
            write(p, scene);
            const Run r = run([&](auto& o, auto& e) { return cmd_track(p.string(), StartPolicy::Auto, g, "", o, e); });
            CAPTURE(scene.dump());
            CHECK(r.code == kExitInput);
        }
        const Run missing = run([&](auto& o, auto& e) {
            return cmd_track(scratch("does-not-exist.json").string(), StartPolicy::Auto, g, "", o, e);
        });
        CHECK(missing.code == kExitInput);
    }
}

TEST_CASE("doubling")
{
    GlobalOptions g;
    Run r = run([&](auto& o, auto& e) { return cmd_doubling({}, g, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out ==
          "i expected found_real radii\n"
          "0 2 2 \n"
          "1 4 4 1/10\n"
          "2 8 8 1/10,1/10\n"
          "3 16 16 1/10,1/10,1/10\n"
          "4 32 32 1/10,1/10,1/10,1/10\n");

    // huge radii: whatever is found is reported as found
    r = run([&](auto& o, auto& e) { return cmd_doubling(parse_radii("10,10,10,10"), g, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out.find("4 32 ") != std::string::npos);

    CHECK_THROWS_AS(parse_radii("0,0,0,0"), ParseError);
    CHECK_THROWS_AS(parse_radii("1,1,1"), ParseError);
    CHECK_THROWS_AS(parse_radii("1,-1,1,1"), ParseError);
    CHECK(parse_radii("0.5,1/3,2,1e-2")[3] == rat(1, 100));

    g.output = scratch("doubling.json").string();
    r = run([&](auto& o, auto& e) { return cmd_doubling({}, g, o, e); });
    const json rows = read(g.output)["rows"];
    REQUIRE(rows.size() == 5);
    CHECK(rows[4]["found_real"] == 32);
    CHECK(rows[4]["success"] == true);
}

TEST_CASE("transversals")
{
    GlobalOptions g;
    Run r = run([&](auto& o, auto& e) { return cmd_transversals_tetrahedron(g, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out.find("count=2 real=2") != std::string::npos);
    CHECK(r.out.find("line: p02=1\n") != std::string::npos);
    CHECK(r.out.find("line: p13=1\n") != std::string::npos);

    r = run([&](auto& o, auto& e) { return cmd_transversals_moment(parse_moment_points("0,1,2,3"), g, o, e); });
    CHECK(r.code == 0);
    CHECK(r.out.find("count=2 real=2") != std::string::npos);

    CHECK_THROWS_AS(parse_moment_points("0,0,1,2"), ParseError);
    CHECK_THROWS_AS(parse_moment_points("0,1,2"), ParseError);
    CHECK(parse_moment_points("1/2,0.5e1,-3,7")[1] == 5);

    g.output = scratch("transversals.json").string();
    r = run([&](auto& o, auto& e) { return cmd_transversals_tetrahedron(g, o, e); });
    const json doc = read(g.output);
    CHECK(doc["count"] == 2);
    CHECK(doc["exact_solutions"].size() == 2);
}
