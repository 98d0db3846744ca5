// End-to-end checks of the command line tool. Each case shells out to the
// built binary (path injected via NNSTAB_CLI_PATH) with fixture files in a
// scratch directory.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "nnstab/hurwitz.hpp"
#include "nnstab/matrix.hpp"
#include "nnstab/partitions.hpp"
#include "nnstab/schur.hpp"
#include "nnstab/spectral.hpp"
#include "reference_data.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using nnstab::Matrix;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("nnstab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

int run_cli(const Scratch& scratch, const std::string& args,
            std::string* captured = nullptr) {
  const std::string out = scratch.path("stdout.txt");
  const std::string cmd =
      std::string("\"") + NNSTAB_CLI_PATH + "\" " + args + " > " + out + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  if (captured) {
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    *captured = ss.str();
  }
  return WEXITSTATUS(status);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("destabilize subcommand writes the boundary matrix and a report") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::stable3_A);
  const int rc = run_cli(s, "destabilize --input " + s.path("a.csv") +
                                " --output " + s.path("x.csv") + " --report " +
                                s.path("rep.json"));
  CHECK(rc == 0);
  const Matrix X = nnstab::read_matrix_csv(s.path("x.csv"));
  CHECK(std::abs(nnstab::perron_triple(X).rho - 1.0) <= 1e-8);
  CHECK((X - refdata::stable3_X).cwiseAbs().maxCoeff() <= 5e-4);
  const json rep = load_json(s.path("rep.json"));
  CHECK(rep.at("schema").get<int>() == 1);
  CHECK(rep.at("mode").get<std::string>() == "schur-destabilize");
  const double dist = rep.at("distance").get<double>();
  CHECK(std::abs(rep.at("distance_squared").get<double>() - dist * dist) <=
        1e-12);
  CHECK(std::abs(rep.at("spectral_value").get<double>() - 1.0) <= 1e-8);
}

TEST_CASE("destabilize refuses inputs already at or past the boundary") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::unstable3_A);
  CHECK(run_cli(s, "destabilize --input " + s.path("a.csv")) == 2);
}

TEST_CASE("stabilize subcommand round-trips through JSON output") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::unstable3_A);
  const int rc = run_cli(
      s, "stabilize --input " + s.path("a.csv") + " --format json --output " +
             s.path("x.json") + " --report " + s.path("rep.json"));
  CHECK(rc == 0);
  const Matrix X = nnstab::read_matrix_json(s.path("x.json"));
  CHECK((X - refdata::unstable3_X).cwiseAbs().maxCoeff() <= 5e-4);
  const json rep = load_json(s.path("rep.json"));
  CHECK(rep.at("mode").get<std::string>() == "schur-stabilize");
  CHECK(rep.at("classification").get<std::string>() == "positive_global");
  CHECK(!rep.at("trace").empty());
  CHECK(rep.at("certificate_summary").at("accepted").get<bool>());
}

TEST_CASE("matrix goes to stdout when no output path is given") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::stable3_A);
  std::string out;
  CHECK(run_cli(s, "destabilize --input " + s.path("a.csv"), &out) == 0);
  CHECK(out.find(',') != std::string::npos);  // CSV rows on stdout
}

TEST_CASE("hurwitz-stabilize subcommand") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("m.csv"), refdata::metzler6_A);
  const int rc =
      run_cli(s, "hurwitz-stabilize --input " + s.path("m.csv") +
                     " --output " + s.path("x.csv") + " --report " +
                     s.path("rep.json"));
  CHECK(rc == 0);
  const json rep = load_json(s.path("rep.json"));
  CHECK(rep.at("mode").get<std::string>() == "hurwitz-stabilize");
  CHECK(rep.at("spectral_value").get<double>() <= 1e-6);
  const Matrix X = nnstab::read_matrix_csv(s.path("x.csv"));
  CHECK(nnstab::is_metzler(X));
}

TEST_CASE("hurwitz-destabilize subcommand and its boundary refusal") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("stable.csv"), refdata::metzler2_A);
  CHECK(run_cli(s, "hurwitz-destabilize --input " + s.path("stable.csv") +
                       " --output " + s.path("x.csv")) == 0);
  const Matrix X = nnstab::read_matrix_csv(s.path("x.csv"));
  CHECK(nnstab::two_smallest_singular_values(X).first <= 1e-8);

  nnstab::write_matrix_csv(s.path("unstable.csv"), refdata::metzler5_A);
  CHECK(run_cli(s, "hurwitz-destabilize --input " + s.path("unstable.csv")) ==
        2);
}

TEST_CASE("verify subcommand accepts solver output and rejects perturbations") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::unstable3_A);
  const auto res = nnstab::stabilize(refdata::unstable3_A);
  nnstab::write_matrix_csv(s.path("x.csv"), res.X);
  CHECK(run_cli(s, "verify --input " + s.path("x.csv") + " --against " +
                       s.path("a.csv")) == 0);

  Matrix Xbad = res.X;
  Xbad(0, 2) += 0.02;
  nnstab::write_matrix_csv(s.path("xbad.csv"), Xbad);
  CHECK(run_cli(s, "verify --input " + s.path("xbad.csv") + " --against " +
                       s.path("a.csv")) == 2);
}

TEST_CASE("verify subcommand handles Metzler pairs") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("m.csv"), refdata::metzler5_A);
  const auto res = nnstab::hurwitz_stabilize(refdata::metzler5_A);
  nnstab::write_matrix_csv(s.path("x.csv"), res.X);
  CHECK(run_cli(s, "verify --input " + s.path("x.csv") + " --against " +
                       s.path("m.csv")) == 0);
}

TEST_CASE("enumerate-minima subcommand prints a CSV table") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"),
                           nnstab::lower_dominant_example(3));
  std::string out;
  CHECK(run_cli(s, "enumerate-minima --input " + s.path("a.csv"), &out) == 0);
  REQUIRE(out.rfind("partition,distance,stationary", 0) == 0);
  int rows = 0;
  for (char c : out) rows += c == '\n';
  CHECK(rows >= 5);  // header plus at least four minima

  nnstab::write_matrix_csv(s.path("bad.csv"), refdata::stable3_A);
  CHECK(run_cli(s, "enumerate-minima --input " + s.path("bad.csv")) == 2);
}

TEST_CASE("I/O failures exit with code 1") {
  Scratch s;
  CHECK(run_cli(s, "stabilize --input " + s.path("missing.csv")) == 1);
  {
    std::ofstream bad(s.path("garbled.csv"));
    bad << "1.0,2.0\nnot-a-number,3.0\n";
  }
  CHECK(run_cli(s, "stabilize --input " + s.path("garbled.csv")) == 1);
}

TEST_CASE("the --mode alias mirrors the subcommands") {
  Scratch s;
  nnstab::write_matrix_csv(s.path("a.csv"), refdata::stable3_A);
  CHECK(run_cli(s, "--mode destabilize --input " + s.path("a.csv") +
                       " --output " + s.path("x.csv")) == 0);
  CHECK(run_cli(s, "--mode schur-destabilize --input " + s.path("a.csv") +
                       " --output " + s.path("y.csv")) == 0);
  const Matrix X = nnstab::read_matrix_csv(s.path("x.csv"));
  const Matrix Y = nnstab::read_matrix_csv(s.path("y.csv"));
  CHECK((X - Y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("running without a subcommand fails with usage help") {
  Scratch s;
  std::string out;
  CHECK(run_cli(s, "", &out) == 1);
  CHECK(out.find("Usage") != std::string::npos);
}

TEST_CASE("the bundled repro suite passes") {
  Scratch s;
  std::string out;
  const int rc = run_cli(s, "repro", &out);
  CHECK(rc == 0);
  CHECK(out.find("FAIL") == std::string::npos);
  CHECK(out.find("pass") != std::string::npos);
}
