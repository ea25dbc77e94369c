#include <string>

#include "doctest.h"
#include "liqsched/errors.hpp"
#include "liqsched/params_io.hpp"
#include "test_support.hpp"

using namespace liqsched;
using nlohmann::json;

namespace {

json base_doc() {
  return json::parse(R"({
    "s0": [50, 100], "x0": [1e7, 8e6],
    "sigma": [[0.08, 0.02], [0.1, 0.03]],
    "gamma": [[3e-9, 1e-9], [2e-9, 5e-9]],
    "eta": [3e-8, 5e-8]
  })");
}

std::string error_of(const json& doc) {
  try {
    market_from_json(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("market document parses with default confidence") {
  const auto doc = market_from_json(base_doc());
  CHECK(doc.params.n() == 2);
  CHECK(doc.params.x0()(1) == 8e6);
  CHECK(doc.params.gamma()(0, 1) == 1e-9);
  CHECK(doc.params.gamma()(1, 0) == 2e-9);
  CHECK(doc.risk.p() == 0.99);

  auto with_p = base_doc();
  with_p["p"] = 0.95;
  CHECK(market_from_json(with_p).risk.p() == 0.95);
}

TEST_CASE("market document round-trips") {
  const auto doc = market_from_json(base_doc());
  const auto again = market_from_json(market_to_json(doc.params, doc.risk));
  CHECK(again.params.sigma() == doc.params.sigma());
  CHECK(again.params.gamma() == doc.params.gamma());
  CHECK(again.params.eta() == doc.params.eta());
  CHECK(again.params.s0() == doc.params.s0());
  CHECK(again.risk.p() == doc.risk.p());
}

TEST_CASE("market document errors name the offending key") {
  auto missing = base_doc();
  missing.erase("eta");
  CHECK(error_of(missing).find("eta") != std::string::npos);

  auto short_row = base_doc();
  short_row["sigma"][1] = json::array({0.1});
  CHECK_THROWS_AS(market_from_json(short_row), DimensionError);
  CHECK(error_of(short_row).find("sigma") != std::string::npos);

  auto wrong_len = base_doc();
  wrong_len["x0"] = json::array({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(market_from_json(wrong_len), DimensionError);

  auto not_number = base_doc();
  not_number["s0"][0] = "fifty";
  CHECK(error_of(not_number).find("s0") != std::string::npos);

  auto bad_p = base_doc();
  bad_p["p"] = 1.5;
  CHECK_THROWS_AS(market_from_json(bad_p), ValidationError);

  CHECK_THROWS_AS(load_market("/nonexistent/params.json"), ValidationError);
}
