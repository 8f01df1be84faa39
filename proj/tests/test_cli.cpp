// End-to-end checks of the command-line front end: exit codes, output
// formats, and the byte-identical determinism gate.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef BMTK_CLI_PATH
#define BMTK_CLI_PATH "bmtk"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
};

fs::path work_dir() {
  const fs::path p = fs::temp_directory_path() / "bmtk_cli_tests";
  fs::create_directories(p);
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = std::string(BMTK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: zoo -> vr pipeline with exact interior block values") {
  const fs::path dir = work_dir() / "pipeline";
  fs::create_directories(dir);
  CHECK(run("zoo --family thm2 --gamma 2 --n-min 3 --n-max 12 --emit vr --vr-r 1 --out " +
            dir.string()).exit_code == 0);
  const std::string csv = slurp(dir / "family_vr.csv");
  CHECK(csv.find("j,block_value") == 0);
  // Every interior block value is exactly 3.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.find(',') + 1) == "3");
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("cli: positional family with --r as the block exponent") {
  const fs::path dir = work_dir() / "positional";
  fs::create_directories(dir);
  CHECK(run("zoo thm2 --gamma 2 --n-min 3 --n-max 12 --emit vr --r 1 --out " +
            dir.string()).exit_code == 0);
  const std::string csv = slurp(dir / "family_vr.csv");
  CHECK(csv.find("3,3\n") != std::string::npos);
  CHECK(csv.find("11,3\n") != std::string::npos);
}

TEST_CASE("cli: exit code 2 on missing input or bad flags") {
  CHECK(run("vr-norm --fn /nonexistent/missing.json").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("zoo --emit nonsense --out " + (work_dir() / "x").string()).exit_code == 2);
}

TEST_CASE("cli: exit code 2 on unwritable output path") {
  CHECK(run("obstruction --C0 1 --N 100 --out /dev/null/nope").exit_code == 2);
}

TEST_CASE("cli: exit code 1 on precondition violations") {
  const fs::path dir = work_dir() / "precond";
  fs::create_directories(dir);
  // A majorant family with invalid parameters.
  CHECK(run("zoo --family upsilon --alpha 0.7 --beta 1 --out " + dir.string()).exit_code == 1);
  CHECK(run("borichev --C 1.5 --out " + dir.string()).exit_code == 1);
  // Local lemma with a delta budget the function violates.
  CHECK(run("zoo --family thm2 --gamma 2 --n-min 3 --n-max 5 --emit fn --out " +
            dir.string()).exit_code == 0);
  CHECK(run("nazarov-local --fn " + (dir / "family_fn.json").string() +
            " --lo 7 --hi 9 --delta 0.001 --kappa 100 --r 2 --out " + dir.string())
            .exit_code == 1);
}

TEST_CASE("cli: byte-identical outputs across repeated runs") {
  const fs::path d1 = work_dir() / "det1";
  const fs::path d2 = work_dir() / "det2";
  fs::create_directories(d1);
  fs::create_directories(d2);
  const std::string common =
      "zoo --family myau --r 2 --n-min 3 --n-max 10 --emit poisson --out ";
  CHECK(run(common + d1.string()).exit_code == 0);
  CHECK(run(common + d2.string()).exit_code == 0);
  CHECK(slurp(d1 / "family_poisson.csv") == slurp(d2 / "family_poisson.csv"));
  CHECK(!slurp(d1 / "family_poisson.csv").empty());

  const std::string bor = "borichev --gamma 2 --C 0.5 --alpha 0.25 --m-max 3 "
                          "--n-min 3 --n-max 20 --out ";
  CHECK(run(bor + d1.string()).exit_code == 0);
  CHECK(run(bor + d2.string()).exit_code == 0);
  CHECK(slurp(d1 / "borichev.csv") == slurp(d2 / "borichev.csv"));
  CHECK(slurp(d1 / "borichev_divergence.json") == slurp(d2 / "borichev_divergence.json"));
}

TEST_CASE("cli: BMTK_OUT supplies the default output directory") {
  const fs::path dir = work_dir() / "envout";
  fs::create_directories(dir);
  const std::string cmd = "BMTK_OUT=" + dir.string() + " " + std::string(BMTK_CLI_PATH) +
                          " obstruction --C0 1 --N 100 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(dir / "obstruction.json"));
}

TEST_CASE("cli: hilbert table and certify/synthesize round") {
  const fs::path dir = work_dir() / "hil";
  fs::create_directories(dir);
  // Box indicator: H at 3 is ln 2.
  std::ofstream fn(dir / "chi.json");
  fn << R"({"default": 0, "pieces": [{"interval": [-1.0, 1.0], "coeffs": [1.0]}]})";
  fn.close();
  CHECK(run("hilbert --fn " + (dir / "chi.json").string() +
            " --x-min 3 --x-max 3 --n 1 --oracle --out " + dir.string()).exit_code == 0);
  const std::string csv = slurp(dir / "hilbert.csv");
  CHECK(csv.find("x,Hf,Hf_oracle,est_error") == 0);
  CHECK(csv.find("0.69314718055994") != std::string::npos);

  // Certify a smooth log-majorant, then synthesize.
  std::ofstream m(dir / "m.json");
  m << R"({"default": 0, "pieces": [
      {"interval": [-0.75, -0.5], "coeffs": [0, 0, 0, 640, -3840, 6144]},
      {"interval": [-0.5, 0.5], "coeffs": [1]},
      {"interval": [0.5, 0.75], "coeffs": [1, 0, 0, -640, 3840, -6144]}]})";
  m.close();
  CHECK(run("certify --log-majorant " + (dir / "m.json").string() +
            " --sigma 30 --out " + dir.string()).exit_code == 0);
  const std::string cert = slurp(dir / "certificate.json");
  CHECK(cert.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(run("synthesize --log-majorant " + (dir / "m.json").string() +
            " --sigma 30 --L 64 --N 4096 --out " + dir.string()).exit_code == 0);
  const std::string rep = slurp(dir / "spectrum_report.json");
  CHECK(rep.find("in_band_energy_fraction") != std::string::npos);
  const std::string samples = slurp(dir / "samples.csv");
  CHECK(samples.find("x,re_f,im_f,abs_f,omega") == 0);
}
