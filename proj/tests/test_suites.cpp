#include <doctest.h>

#include "certnorm/fourier.hpp"
#include "certnorm/ncmaps.hpp"
#include "certnorm/suites.hpp"

using namespace certnorm;

TEST_CASE("every property suite passes on seeded instances") {
  for (const std::string& name : suites::suite_names()) {
    CAPTURE(name);
    suites::SuiteReport rep = suites::run_suite(name, 4, 8, 20260410);
    for (const suites::PropertyResult& p : rep.properties) {
      CAPTURE(p.name);
      CHECK(p.fail == 0);
    }
    CHECK(rep.all_pass);
    // Reports serialize and stay stable across reruns.
    suites::SuiteReport again = suites::run_suite(name, 4, 8, 20260410);
    CHECK(suites::suite_report_to_json(rep).dump(2) ==
          suites::suite_report_to_json(again).dump(2));
  }
  CHECK_THROWS_AS(suites::run_suite("nosuch", 4, 8, 1), std::invalid_argument);
}

TEST_CASE("dimension caps are enforced") {
  CHECK_THROWS_AS(fourier::rho(std::vector<std::vector<double>>(25, {1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(nc::cs1_gap_demo(DenseMatrix::identity(13)), std::invalid_argument);
  CHECK_THROWS_AS(nc::gamma_star_map_bound(DenseMatrix::identity(9)), std::invalid_argument);
  CHECK_THROWS_AS(nc::cs1_norm_sdp(nc::MatrixMap::identity(9)), std::invalid_argument);
}
