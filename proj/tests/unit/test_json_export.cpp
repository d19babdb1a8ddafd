#include <gtest/gtest.h>

#include <sstream>

#include "maxclass5/maxclass5.hpp"

using namespace maxclass5;

namespace {

PresentationParams P(long long n, long long w, long long z, std::vector<long long> a = {}) {
  return validate_params({5, n, w, z, std::move(a)});
}

std::string field_of(const std::string& text) {
  try {
    descriptor_from_string(text);
  } catch (const ParamError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Json, DescriptorRoundTrip) {
  for (const auto& p : {P(4, 0, 0), P(7, 3, 1, {2, 0, 4})}) {
    const std::string text = to_json(p).dump();
    EXPECT_EQ(descriptor_from_string(text), p);
  }
  EXPECT_EQ(to_json(P(6, 0, 1, {1})).dump(), R"({"p":5,"n":6,"w":0,"z":1,"a":[1]})");
}

TEST(Json, DescriptorErrors) {
  EXPECT_EQ(field_of(R"({"p":5,"n":6,"w":0,"z":1})"), "a");
  EXPECT_EQ(field_of(R"({"p":5,"n":6,"w":0,"z":1,"a":[],"extra":1})"), "extra");
  EXPECT_EQ(field_of(R"({"p":5,"n":"6","w":0,"z":1,"a":[]})"), "n");
  EXPECT_EQ(field_of(R"({"p":5,"n":6,"w":0.5,"z":1,"a":[]})"), "w");
  EXPECT_EQ(field_of(R"({"p":5,"n":4,"w":0,"z":1,"a":[1]})"), "a");
  EXPECT_EQ(field_of("[1,2]"), "descriptor");
  EXPECT_EQ(field_of("{"), "descriptor");
}

TEST(Json, StructureKeyOrder) {
  const Json j = to_json(structure_report(build_group(P(5, 0, 0))));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> head{"n",          "class",          "coclass",
                                      "defect_k",   "invariant_e",    "chi2_index",
                                      "subgroup_types", "gamma2_exponent"};
  ASSERT_GE(keys.size(), head.size());
  EXPECT_TRUE(std::equal(head.begin(), head.end(), keys.begin()));
  EXPECT_EQ(j["subgroup_types"][0], Json::array({5, 5, 5, 5}));  // 5^{n-k-1}
}

TEST(Export, DotHasLatticeNodes) {
  const PcGroup g = build_group(P(6, 0, 1, {1}));
  std::ostringstream out;
  export_group(g, ExportFormat::dot, out);
  const std::string dot = out.str();
  for (int i = 1; i <= 6; ++i) {
    EXPECT_NE(dot.find("  H_" + std::to_string(i) + " [label="), std::string::npos);
  }
  EXPECT_NE(dot.find("gamma_2 [label="), std::string::npos);
  EXPECT_NE(dot.find("H_1 = chi_2"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
  EXPECT_EQ(edges, 12u);
}

TEST(Export, JsonRebuilds) {
  const PcGroup g = build_group(P(7, 1, 2, {3}));
  std::ostringstream out;
  export_group(g, ExportFormat::json, out);
  const Json j = Json::parse(out.str());
  const PcGroup again = build_group(descriptor_from_json(j["descriptor"]));
  EXPECT_EQ(again.params(), g.params());
  EXPECT_EQ(again.tables().conj_y, g.tables().conj_y);
  EXPECT_EQ(again.tables().s_power, g.tables().s_power);
  EXPECT_EQ(j["structure"]["class"], 6);
}

TEST(Export, TableRows) {
  const PcGroup g = build_group(P(4, 0, 0));
  std::ostringstream out;
  export_group(g, ExportFormat::table, out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 625);
  }
  EXPECT_EQ(rows, 625u);
  std::ostringstream big;
  EXPECT_THROW(export_group(build_group(P(5, 0, 0)), ExportFormat::table, big), SizeGuard);
  EXPECT_THROW(parse_export_format("svg"), ParamError);
}
