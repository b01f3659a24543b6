#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mfchern/config.hpp"

using namespace mfc;

namespace {

std::string where_of(const std::string& text) {
  try {
    load_job(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<no error>";
}

const char* kKoszul = R"({
  "scheme": {"patches": [{"name": "U", "variables": ["x"]}], "potential": ["x^2"]},
  "mf": {"koszul": {"a": ["x"], "b": ["x"]}}
})";

}  // namespace

TEST(Config, LoadsTheShippedExamples) {
  std::string dir = MFCHERN_CONFIG_DIR;
  JobInput p1 = load_job_file(dir + "/p1_o3.json");
  EXPECT_EQ(p1.X->num_patches(), 2);
  CechCochain ch = chern_hn(*p1.P, p1.connection_or_default(), 2);
  SchemePtr X = projective_line();
  MFPtr ref = fx::line_mf(X, 3);
  EXPECT_EQ(ch.str(), chern_hn(*ref, default_connection(ref->bundle), 2).str());

  JobInput z2 = load_job_file(dir + "/koszul_z2.json");
  ASSERT_TRUE(z2.equivariant.has_value());
  ASSERT_TRUE(z2.kappa.has_value());
  EXPECT_EQ(z2.group->order(), 2);
  EXPECT_TRUE(z2.equivariant->check().empty());

  JobInput loc = load_job_file(dir + "/koszul_localized.json");
  ASSERT_TRUE(loc.support.has_value());
  EXPECT_EQ(loc.support->I1, std::vector<int>{0});
}

TEST(Config, InlineKoszulMatchesTheLibraryConstructor) {
  JobInput j = load_job(kKoszul);
  fx::Z2Koszul z;
  EXPECT_EQ(chern_hn(*j.P, j.connection_or_default(), 2).str(),
            chern_hn(*z.P, default_connection(z.P->bundle), 2).str());
}

TEST(Config, ExplicitConnectionIsRead) {
  JobInput j = load_job(R"({
    "scheme": {"patches": [{"name": "U", "variables": ["x"]}], "potential": ["x^2"]},
    "mf": {"koszul": {"a": ["x"], "b": ["x"]}},
    "connection": {"patches": [[[{"x": "x"}, {}], [{}, {}]]]}
  })");
  ASSERT_TRUE(j.connection.has_value());
  const RingPtr& r = j.X->ring({0});
  EXPECT_EQ(j.connection->C[0](0, 0), DifferentialForm::dx(r, 0).times(LocalFrac::variable(r, 0)));
  EXPECT_TRUE(j.connection->C[0](1, 1).is_zero());
}

TEST(Config, ErrorsCarryTheirLocation) {
  EXPECT_EQ(where_of("{"), "");
  EXPECT_EQ(where_of(R"({"scheme": {"patches": [{"name": "U", "variables": ["x"]}]}})"), "/scheme");
  EXPECT_EQ(where_of(R"({"scheme": {"patches": [], "potential": []}})"), "/scheme/patches");
  EXPECT_EQ(where_of(R"({"scheme": {"patches": [{"name": "U", "variables": ["x"]}], "potential": ["x^2"]},
                        "mf": {"koszul": {"a": ["x"], "b": ["x", "1"]}}})"),
            "/mf/koszul");
  EXPECT_EQ(where_of(R"({"scheme": {"patches": [{"name": "U", "variables": ["x"]}], "potential": ["x^2"]},
                        "mf": {"koszul": {"a": ["x"], "b": ["2*x"]}}})"),
            "/mf/koszul");
  EXPECT_EQ(where_of(R"({"scheme": {"grading": "Q", "patches": [{"name": "U", "variables": ["x"]}], "potential": ["0"]}})"),
            "/scheme/grading");
  std::string dir = MFCHERN_CONFIG_DIR;
  try {
    load_job_file(dir + "/missing_potential.json");
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.where(), "/scheme/potential");
  }
  EXPECT_THROW(load_job_file(dir + "/does_not_exist.json"), ConfigError);
}

TEST(Config, GroupMustFixThePotential) {
  EXPECT_EQ(where_of(R"({
    "scheme": {"patches": [{"name": "U", "variables": ["x"]}], "potential": ["x^3"]},
    "group": {"elements": ["e", "s"], "table": [[0, 1], [1, 0]], "matrices": [[[["1"]]], [[["-1"]]]]}
  })"),
            "/group");
}
