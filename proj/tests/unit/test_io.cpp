#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "models.hpp"
#include "sptkit/errors.hpp"
#include "sptkit/io.hpp"

using namespace sptkit;

TEST(CanonicalJson, KeepsKeyOrderAndPrintsSeventeenDigits) {
  EXPECT_EQ(canonical_json(R"({"b": 0.1, "a": [1, 2.5]})", -1), R"({"b":0.10000000000000001,"a":[1,2.5]})");
  const std::string once = canonical_json(R"({"z": 1e-20, "y": {"x": true}})");
  EXPECT_EQ(canonical_json(once), once);
}

TEST(CanonicalJson, MalformedIsParseError) {
  try {
    canonical_json("{\"a\":");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(MpsJson, RoundTripsTensorsExactly) {
  for (const auto& spec : {models::z2(2, 3), models::a4(1, 5), models::s4(7)}) {
    const auto mps = models::build(spec);
    const auto back = parse_mps_json(mps_json(mps));
    EXPECT_EQ(back.group, mps.group);
    ASSERT_EQ(back.bond.size(), mps.bond.size());
    const auto& a = mps.tensors(0);
    const auto& b = back.tensors(0);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    EXPECT_EQ(mps_json(back).substr(0, 40), mps_json(mps).substr(0, 40));
  }
}

TEST(MatrixJson, IsCompactAndParses) {
  Mat m(2, 2);
  m << cplx(1, 0), cplx(0, -0.5), cplx(0, 0.5), cplx(-1, 0);
  const auto text = matrix_json(m);
  EXPECT_EQ(text.find('\n'), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(text).is_array());
}

TEST(TranscriptJsonl, OneRecordPerMeasurement) {
  const auto res = compile_rotation(ResourceKind::Aklt, euler_zxz(0.1, 0.2, 0.3), 64, 5);
  const auto text = transcript_jsonl(res.transcript);
  std::istringstream lines(text);
  std::string line;
  size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("site"), n + 1);  // sites count from 1
    for (const char* key : {"basis", "outcome", "p", "byproduct_after"}) EXPECT_TRUE(j.contains(key)) << key;
    ++n;
  }
  EXPECT_EQ(n, res.transcript.size());
}

TEST(GroupInfoJson, CountsClasses) {
  const auto j = nlohmann::json::parse(group_info_json(builtin_group("S4")));
  EXPECT_EQ(j.at("order"), 48);
  EXPECT_EQ(j.at("sum_dim_squared"), 48);
}
