#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bmtk/function_io.hpp"
#include "test_util.hpp"

using namespace bmtk;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("piecewise JSON round trip preserves values and defaults") {
  testutil::Rng rng(2718);
  for (int i = 0; i < 10; ++i) {
    const PiecewiseFn f = testutil::random_compact_quadratic(rng);
    const PiecewiseFn g = piecewise_from_json(piecewise_to_json(f));
    CHECK(g.default_value() == f.default_value());
    REQUIRE(g.pieces().size() == f.pieces().size());
    for (int k = 0; k <= 50; ++k) {
      const double x = -4.0 + 8.0 * k / 50.0;
      CHECK(g.value(x) == f.value(x));
    }
  }
}

TEST_CASE("piecewise JSON round trips log scales") {
  std::vector<Piece> ps;
  ps.push_back({Interval(0.0, 1.0), Poly::linear(0.0, 1.0),
                LogScalar::from_log(1, 1024.0)});
  const PiecewiseFn f(std::move(ps), 0, false);
  const ordered_json j = piecewise_to_json(f);
  const PiecewiseFn g = piecewise_from_json(j);
  REQUIRE(g.pieces()[0].log_scale.has_value());
  CHECK(g.pieces()[0].log_scale->log_mag == 1024.0);
  CHECK(g.value_log(0.5).log_mag ==
        doctest::Approx(1024.0 + std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("reader rejects overlapping pieces naming both offenders") {
  ordered_json j;
  j["default"] = 0;
  j["pieces"] = {{{"interval", {0.0, 2.0}}, {"coeffs", {1.0}}},
                 {{"interval", {1.0, 3.0}}, {"coeffs", {2.0}}}};
  try {
    piecewise_from_json(j);
    FAIL("expected overlap rejection");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("overlapping") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);  // first offender's hi
    CHECK(msg.find("1") != std::string::npos);  // second offender's lo
  }
}

TEST_CASE("family spec JSON round trip") {
  for (const MajorantSpec& spec :
       {omega_thm2(2.0, 3, 12), omega_myau(2.0, 3, 10), omega_prop4(1, 8),
        upsilon_prop35(0.5, 1.0, 3, 9), omega_star(3, 5)}) {
    const MajorantSpec back = family_from_json(family_to_json(spec));
    CHECK(back.family == spec.family);
    CHECK(back.n_min == spec.n_min);
    CHECK(back.n_max == spec.n_max);
    REQUIRE(back.hills.size() == spec.hills.size());
    for (size_t i = 0; i < back.hills.size(); ++i) {
      CHECK(back.hills[i].peak == spec.hills[i].peak);
      CHECK(back.hills[i].center == spec.hills[i].center);
    }
  }
}

TEST_CASE("interval system JSON carries kinds, parents and generations") {
  IntervalSystem am;
  am.base = Interval(-0.5, 0.5);
  SystemMember c;
  c.key = {2, 1};
  c.iv = am.real_interval(c.key);
  am.members.push_back(c);
  const IntervalSystem tau = attach_tails(am);
  const ordered_json j = interval_system_to_json(tau);
  CHECK(j.at("members").size() == tau.members.size());
  bool has_tail = false, has_essential = false;
  for (const auto& m : j.at("members")) {
    CHECK(m.contains("kind"));
    CHECK(m.contains("lo"));
    CHECK(m.contains("hi"));
    CHECK(m.contains("parent"));
    CHECK(m.contains("p"));
    if (m.at("kind") == "tail") has_tail = true;
    if (m.at("kind") == "essential_maximal") has_essential = true;
  }
  CHECK(has_tail);
  CHECK(has_essential);
}

TEST_CASE("save/load cycle on disk and parse diagnostics") {
  const std::string path = tmp_path("bmtk_io_test_fn.json");
  const PiecewiseFn f = PiecewiseFn::tent(0.0, 1.0, 1.0);
  save_json(piecewise_to_json(f), path);
  const PiecewiseFn g = load_piecewise(path);
  CHECK(g.value(0.25) == f.value(0.25));
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(load_json(tmp_path("bmtk_definitely_missing.json")),
                       doctest::Contains("io:"), std::runtime_error);

  std::ofstream bad(tmp_path("bmtk_io_bad.json"));
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_WITH_AS(load_json(tmp_path("bmtk_io_bad.json")),
                       doctest::Contains("parse"), std::runtime_error);
  std::remove(tmp_path("bmtk_io_bad.json").c_str());
}

TEST_CASE("csv writer: header, full precision, stable bytes") {
  const std::string path = tmp_path("bmtk_io_test.csv");
  for (int run = 0; run < 2; ++run) {
    CsvWriter w(path, {"x", "y"});
    w.row({1.0 / 3.0, 2.0});
    w.row({-0.1, 1e-17});
    w.close();
  }
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y");
  std::getline(in, line);
  CHECK(line == "0.33333333333333331,2");
  std::remove(path.c_str());
}
