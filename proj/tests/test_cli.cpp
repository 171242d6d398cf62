#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wulffkit/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wulffkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
  const char* env = std::getenv("WULFFKIT_TEST_TMP");
  auto p = std::filesystem::path(env ? env : std::filesystem::temp_directory_path().string()) / "cli_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("compare") {
  const auto r = run({"compare"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "fcc");
  CHECK(j["m_FCC"].get<double>() < j["m_HCP"].get<double>());
}

TEST_CASE("phi") {
  auto r = run({"phi", "--lattice", "fcc", "--nu", "1,0,0"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(4.0));
  r = run({"phi", "--lattice", "hcp", "--nu", "0,0,2", "--method", "cell"});
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(2.0 * std::sqrt(3.0)));
  r = run({"phi", "--lattice", "fcc", "--nu", "0,0,1", "--method", "mincut", "--T", "10"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(4.52).epsilon(1e-9));
}

TEST_CASE("usage errors name the flag") {
  auto r = run({"phi", "--nu", "1,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--nu") != std::string::npos);
  r = run({"phi", "--nu", "1,0,0", "--method", "magic"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--method") != std::string::npos);
  r = run({"wulff", "--frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--frobnicate") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"scaling", "--Ns", "10,abc"}).code == 2);
}

TEST_CASE("help lists defaults") {
  for (const char* cmd : {"phi", "voronoi", "wulff", "compare", "energy", "anneal", "scaling", "validate"}) {
    const auto r = run({cmd, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  CHECK(run({"anneal", "--help"}).out.find("[0.985]") != std::string::npos);
}

TEST_CASE("wulff report and export") {
  auto r = run({"wulff", "--lattice", "hcp", "--report", "-"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["volume"].get<double>() == doctest::Approx(260.0));
  const auto off = tmp_dir() / "w.off";
  const auto rep = tmp_dir() / "w.json";
  r = run({"wulff", "--lattice", "fcc", "--export", "off", off.string(), "--report", "json", rep.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(off);
  std::string header;
  f >> header;
  CHECK(header == "OFF");
  std::ifstream fr(rep);
  CHECK(nlohmann::json::parse(fr)["surface_integral"].get<double>() == doctest::Approx(768.0));
}

TEST_CASE("voronoi export") {
  const auto off = tmp_dir() / "v.off";
  const auto r = run({"voronoi", "--lattice", "fcc", "--export", "off", off.string()});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["face_count"] == 12);
  std::ifstream f(off);
  std::string header;
  int nv = 0, nf = 0;
  f >> header >> nv >> nf;
  CHECK(header == "OFF");
  CHECK(nv == 14);
  CHECK(nf == 12);
}

TEST_CASE("energy of a configuration file") {
  const auto path = tmp_dir() / "two.cfg";
  {
    std::ofstream f(path);
    f << "0 0 0 0\n1 0 0 0\n";
  }
  const auto r = run({"energy", "--config", path.string(), "--lattice", "fcc"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["N"] == 2);
  CHECK(j["energy"].get<double>() == 22.0);
  CHECK(run({"energy", "--config", (tmp_dir() / "missing.cfg").string()}).code == 1);
}

TEST_CASE("bad lattice files are domain errors") {
  const auto path = tmp_dir() / "bad.lat";
  {
    std::ofstream f(path);
    f << "basis\n1 0 0\n0 1 0\n0 0 1\noffset 0 0 0\n"
         "stencil 0: 0.9 0 0\nstencil 0: -0.9 0 0\nstencil 0: 0 1 0\nstencil 0: 0 -1 0\n"
         "stencil 0: 0 0 1\nstencil 0: 0 0 -1\nmax_coordination 6\n";
  }
  const auto r = run({"validate", "--lattice", "file:" + path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("norm 0.9") != std::string::npos);
}

TEST_CASE("validate") {
  const auto r = run({"validate", "--T", "10"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  for (const auto& c : j["checks"])
    if (c["name"].get<std::string>().find("min-cut") != std::string::npos) CHECK(c["deviation"].get<double>() < 0.25);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::string> sweep = {"phi", "sweep", "--grid", "icosphere:1", "--lattice", "hcp"};
  CHECK(run(sweep).out == run(sweep).out);
  const std::vector<std::string> anneal = {"anneal", "--N", "30", "--seeds", "2", "--sweeps", "20", "--out", "json"};
  const auto a = run(anneal);
  CHECK(a.code == 0);
  CHECK(a.out == run(anneal).out);
  const auto csv = run({"phi", "sweep", "--grid", "icosphere:0"});
  CHECK(csv.out.rfind("nu_x,nu_y,nu_z,phi,phi_polar\n", 0) == 0);
}
