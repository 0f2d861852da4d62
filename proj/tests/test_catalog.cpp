#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "profitrec/catalog.hpp"
#include "profitrec/report.hpp"

using namespace profitrec;

namespace {

const std::vector<CatalogRecord> kRecords{{"A", 4, 1}, {"B", 2, 3}};

IngestError ingest_error(std::string_view text, CatalogFormat format) {
  try {
    parse_catalog(text, format, 5.0);
  } catch (const IngestError& e) {
    return e;
  }
  FAIL("expected IngestError");
  return IngestError(ErrorCode::kParseError, {});
}

}  // namespace

TEST_CASE("csv ingest") {
  CHECK(parse_catalog("item_id,rating,profit\nA,4,1\nB,2,3", CatalogFormat::kCsv, 5) ==
        kRecords);
  CHECK(parse_catalog("\xEF\xBB\xBFitem_id,rating,profit\r\nA, 4 ,1\r\n\r\nB,2,3\r\n",
                      CatalogFormat::kCsv, 5) == kRecords);
  CHECK(parse_catalog("item_id,rating,profit\n\"x,\"\"y\"\"\",2.5,0.1\n", CatalogFormat::kCsv,
                      5)
            .front()
            .item_id == "x,\"y\"");
}

TEST_CASE("json ingest matches csv") {
  const auto json = parse_catalog(
      R"([{"item_id": "A", "rating": 4, "profit": 1},
          {"profit": 3, "rating": 2.0, "item_id": "B"}])",
      CatalogFormat::kJson, 5);
  CHECK(json == kRecords);
}

TEST_CASE("validation errors name the row") {
  const auto e = ingest_error("item_id,rating,profit\nA,4,1\nB,7,3\nC,1,0\n",
                              CatalogFormat::kCsv);
  CHECK(e.code() == ErrorCode::kValidationError);
  REQUIRE(e.diagnostics().size() == 2);
  CHECK(e.diagnostics()[0].line == 3);
  CHECK(e.diagnostics()[0].field == "rating");
  CHECK(e.diagnostics()[1].line == 4);
  CHECK(e.diagnostics()[1].field == "profit");
  CHECK(std::string(e.what()).find("line 3, field rating") != std::string::npos);

  const auto dup = ingest_error("item_id,rating,profit\nA,4,1\nA,2,3\n", CatalogFormat::kCsv);
  CHECK(dup.code() == ErrorCode::kValidationError);
  CHECK(dup.diagnostics()[0].field == "item_id");

  const auto json = ingest_error(R"([{"item_id":"A","rating":9,"profit":1}])",
                                 CatalogFormat::kJson);
  CHECK(json.code() == ErrorCode::kValidationError);
  CHECK(json.diagnostics()[0].line == 1);
}

TEST_CASE("parse errors") {
  CHECK(ingest_error("id,r,p\nA,1,1\n", CatalogFormat::kCsv).code() == ErrorCode::kParseError);
  const auto bad = ingest_error("item_id,rating,profit\nA,four,1\nB,1\n", CatalogFormat::kCsv);
  CHECK(bad.code() == ErrorCode::kParseError);
  CHECK(bad.diagnostics().size() == 2);
  CHECK(ingest_error("item_id,rating,profit\n\"A,1,1\n", CatalogFormat::kCsv).code() ==
        ErrorCode::kParseError);
  CHECK(ingest_error("item_id,rating,profit\nA,1e999,1\n", CatalogFormat::kCsv).code() ==
        ErrorCode::kParseError);
  CHECK(ingest_error("{\"item_id\": 1}", CatalogFormat::kJson).code() == ErrorCode::kParseError);
  CHECK(ingest_error("[{\"item_id\": 1, \"rating\": 1, \"profit\": 1}]", CatalogFormat::kJson)
            .code() == ErrorCode::kParseError);
  CHECK(ingest_error("[1,", CatalogFormat::kJson).code() == ErrorCode::kParseError);
}

TEST_CASE("empty input") {
  CHECK(ingest_error("", CatalogFormat::kCsv).code() == ErrorCode::kEmptyInput);
  CHECK(ingest_error("item_id,rating,profit\n", CatalogFormat::kCsv).code() ==
        ErrorCode::kEmptyInput);
  CHECK(ingest_error("[]", CatalogFormat::kJson).code() == ErrorCode::kEmptyInput);
  CHECK_THROWS_AS(ingest("/nonexistent/catalog.csv", CatalogFormat::kCsv, 5), IngestError);
}

TEST_CASE("emit then ingest reproduces random catalogs") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> rating(0.0, 5.0), profit(1e-3, 1e4);
  const std::string alphabet = "abcXYZ09,\"_- ";
  for (int k = 0; k < 200; ++k) {
    std::vector<CatalogRecord> records;
    const int n = 1 + k % 17;
    for (int i = 0; i < n; ++i) {
      std::string id = "id" + std::to_string(i);
      for (int j = 0; j < k % 5; ++j) id += alphabet[(i * 7 + j * 3 + k) % alphabet.size()];
      records.push_back({id, rating(rng), profit(rng)});
    }
    for (auto format : {CatalogFormat::kCsv, CatalogFormat::kJson}) {
      CHECK(parse_catalog(emit(records, format), format, 5.0) == records);
    }
  }
}

TEST_CASE("run report fields") {
  RunConfig config{.tau = 0.9};
  const auto doc = run(kRecords, config);
  CHECK(doc["schema_version"] == kReportSchemaVersion);
  CHECK(doc["recommendation"][0].get<double>() == doctest::Approx(5.12937933366322));
  CHECK(doc["recommendation"][1].get<double>() == doctest::Approx(4.277026889878547));
  CHECK(doc["achieved_similarity"].get<double>() == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(doc["baseline_profit"].get<double>() == doctest::Approx(2.0));
  CHECK(doc["gain_lower_bound"]["weak"].get<double>() == doctest::Approx(0.2222222222));
  CHECK(doc["gain_lower_bound"]["tight"].get<double>() == doctest::Approx(0.5954332159));
  CHECK(doc["cap_violations"] == nlohmann::ordered_json::array({0}));
  CHECK(doc["clamped"] == false);
  CHECK_FALSE(doc.contains("clamped_recommendation"));
  CHECK_FALSE(doc.contains("search"));

  // key order is part of the format
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys.front() == "schema_version");
  CHECK(keys[1] == "config");

  config.clamp = true;
  const auto clamped = run(kRecords, config);
  CHECK(clamped["clamped_recommendation"][0] == 5.0);

  config.model = PurchaseModel::kMultinomial;
  const auto multi = run(kRecords, config);
  CHECK(multi.contains("search"));
  CHECK(multi["config"]["decision_rule"] == "nonnegative");
  CHECK(render(multi) == render(run(kRecords, config)));
}

TEST_CASE("run at tau = 1 echoes the ratings") {
  for (auto model : {PurchaseModel::kLinear, PurchaseModel::kMultinomial}) {
    const auto doc = run(kRecords, {.tau = 1.0, .model = model});
    CHECK(doc["recommendation"] == doc["ratings"]);
    CHECK(doc["gain_ratio"] == 0.0);
    CHECK(doc["lambda"].is_null());
  }
}

TEST_CASE("run rejects bad configuration") {
  CHECK_THROWS_AS(run(kRecords, {.tau = 0.0}), Error);
  CHECK_THROWS_AS(run(kRecords, {.tau = 0.9, .measure = SimilarityMeasure::kCosine}), Error);
  CHECK_THROWS_AS(run(kRecords, {.tau = 0.9, .epsilon = -1.0}), Error);
  CHECK_THROWS_AS(run({}, {.tau = 0.9}), Error);
  CHECK_THROWS_AS(run(kRecords, {.tau = 0.9, .max_rating = 3.0}), Error);
}
