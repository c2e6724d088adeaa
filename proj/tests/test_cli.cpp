#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diskbio/config.hpp"
#include "diskbio/io.hpp"
#include "diskbio/mesh.hpp"

using namespace diskbio;
using Catch::Approx;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("diskbio_test_" + name);
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(DISKBIO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

int count_lines(const fs::path& p) {
    std::ifstream f(p);
    int n = 0;
    std::string line;
    while (std::getline(f, line))
        if (!line.empty()) ++n;
    return n;
}

} // namespace

TEST_CASE("config: empty file keeps defaults") {
    auto p = temp_file("empty.cfg");
    write_file(p, "");
    RunConfig cfg = load_config(p.string());
    CHECK(cfg.a == 1.0);
    CHECK(cfg.level == 3);
    CHECK(cfg.order_singular == 5);
}

TEST_CASE("config: values parse and propagate") {
    auto p = temp_file("radius.cfg");
    write_file(p, "# radius override\na = 2.0\nlevels = 1,2,3\nlmax = 12\n");
    RunConfig cfg = load_config(p.string());
    CHECK(cfg.a == 2.0);
    CHECK(cfg.levels == std::vector<int>{1, 2, 3});
    CHECK(cfg.lmax == 12);
}

TEST_CASE("config: unknown key is named with its line") {
    auto p = temp_file("bad.cfg");
    write_file(p, "a = 1.0\nfrobnicate = 3\n");
    try {
        load_config(p.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("frobnicate") != std::string::npos);
        CHECK(msg.find(":2") != std::string::npos);
    }
}

TEST_CASE("matrix container round trip is bit exact") {
    TriangleMesh mesh = mesh_disk(1.5, 1);
    GalerkinMatrix m = assemble_mass(mesh, SpaceKind::P1, SpaceKind::P1);
    auto p = temp_file("mass.bin");
    write_matrix_dbio(p.string(), m);

    std::ifstream f(p, std::ios::binary);
    std::string magic;
    std::getline(f, magic);
    CHECK(magic == "DBIO1");

    GalerkinMatrix back = read_matrix_dbio(p.string());
    CHECK(back.op == "mass");
    CHECK(back.level == 1);
    CHECK(back.a == 1.5);
    REQUIRE(back.entries.rows() == m.entries.rows());
    CHECK((back.entries - m.entries).norm() == 0.0);
}

TEST_CASE("cli: eigs writes (lmax+1)^2 rows") {
    auto out = temp_file("eigs.csv");
    REQUIRE(run_cli("eigs --lmax 10 --out " + out.string()) == 0);
    CHECK(count_lines(out) == 121);
}

TEST_CASE("cli: mesh writes the csv pair") {
    auto dir = temp_file("meshdir");
    REQUIRE(run_cli("mesh --level 2 --out-dir " + dir.string()) == 0);
    CHECK(count_lines(dir / "vertices.csv") == 62);   // header + 61
    CHECK(count_lines(dir / "triangles.csv") == 97);  // header + 96
}

TEST_CASE("cli: assemble writes the declared container") {
    auto out = temp_file("v2.bin");
    REQUIRE(run_cli("assemble --operator V --space P0 --level 2 --out " + out.string()) == 0);
    GalerkinMatrix m = read_matrix_dbio(out.string());
    CHECK(m.op == "V");
    CHECK(m.entries.rows() == 96);
    CHECK(m.level == 2);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("verify --suite nosuchsuite --out /dev/null") == 2);
    auto cfgp = temp_file("cli.cfg");
    write_file(cfgp, "oops = 1\n");
    CHECK(run_cli("eigs --lmax 2 --out /dev/null --config " + cfgp.string()) == 2);
    // identity check failures surface as exit 1
    auto out = temp_file("wolfe_tight.csv");
    CHECK(run_cli("verify --suite krenk --tol 1e-15 --out " + out.string()) == 1);
}

TEST_CASE("cli: config radius propagates into outputs") {
    auto cfgp = temp_file("radius2.cfg");
    write_file(cfgp, "a = 2.0\n");
    auto dir = temp_file("meshdir2");
    REQUIRE(run_cli("mesh --level 0 --config " + cfgp.string() + " --out-dir " + dir.string()) ==
            0);
    std::ifstream f(dir / "vertices.csv");
    std::string header, center, first_rim;
    std::getline(f, header);
    std::getline(f, center);
    std::getline(f, first_rim);
    CHECK(first_rim.find("2,0,1") != std::string::npos); // rim vertex at x = 2
}
