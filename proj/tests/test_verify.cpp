#include <gtest/gtest.h>

#include "mfchern/verify.hpp"

using namespace mfc;

TEST(Verify, SameSeedSameReports) {
  SuiteSizes sz;
  sz.instances = 10;
  sz.chains = 10;
  auto a = run_suite({"b_squared", "acw_leibniz"}, 17, sz);
  auto b = run_suite({"b_squared", "acw_leibniz"}, 17, sz);
  EXPECT_EQ(report_str(a), report_str(b));
  for (const auto& r : a) EXPECT_TRUE(r.pass) << r.name << "\n" << r.residual;
}

TEST(Verify, ReportsAreSortedAndNamedPerSetup) {
  SuiteSizes sz;
  sz.instances = 5;
  auto reps = run_suite({"cech_squared"}, 1, sz);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_EQ(reps[0].name, "cech_squared/A1");
  EXPECT_EQ(reps[2].name, "cech_squared/P1");
  for (size_t i = 1; i < reps.size(); ++i) EXPECT_LT(reps[i - 1].name, reps[i].name);
}

TEST(Verify, UnknownNameThrows) {
  EXPECT_THROW(run_suite({"no_such_check"}, 1), std::invalid_argument);
}

TEST(Verify, NegativeControlsDetectTheirDefect) {
  SuiteSizes sz;
  sz.instances = 20;
  sz.chains = 20;
  for (const auto& r : run_suite({"negative_control_b_squared", "negative_control_leibniz"}, 3, sz))
    EXPECT_TRUE(r.pass) << r.name;
}

TEST(Verify, EveryNameIsRunnable) {
  auto names = suite_names();
  EXPECT_GE(names.size(), 15u);
  for (const auto& n : {"tr_nabla_cochain_map", "curvature_bracket", "curvature_powers", "trace_b2", "trace_uB",
                        "retract_eta"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}
