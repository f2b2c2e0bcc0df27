#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hyperplane/continuum.hpp"
#include "hyperplane/harness.hpp"
#include "hyperplane/io.hpp"
#include "hyperplane/stats.hpp"

using namespace hyperplane;

namespace {

std::vector<double> exponential_samples(double rate, int n, uint64_t id) {
  Stream rng = replica_stream(21, stream_purpose::kTest, id);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.exponential() / rate;
  return v;
}

}  // namespace

TEST(Stats, MeanStderr) {
  const MeanEstimate m = mean_stderr({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_THROW(mean_stderr({}), std::invalid_argument);
}

TEST(Stats, KolmogorovTail) {
  EXPECT_NEAR(kolmogorov_tail(1.358), 0.05, 5e-4);
  EXPECT_NEAR(kolmogorov_tail(1.628), 0.01, 2e-4);
  EXPECT_NEAR(kolmogorov_tail(0.29), kolmogorov_tail(0.31), 0.01);
  EXPECT_EQ(kolmogorov_tail(0.0), 1.0);
}

TEST(Stats, ChiSquarePoolsSmallCells) {
  const ChiSquareResult r = chi_square_gof({50, 50, 0}, {0.5, 0.4999, 0.0001});
  EXPECT_EQ(r.dof, 1);
  EXPECT_GT(r.p_value, 0.9);
  const ChiSquareResult bad = chi_square_gof({90, 10}, {0.5, 0.5});
  EXPECT_LT(bad.p_value, 1e-10);
}

TEST(Stats, TotalVariation) {
  EXPECT_NEAR(total_variation({5, 5}, {0.5, 0.5}), 0.0, 1e-15);
  EXPECT_NEAR(total_variation({10, 0}, {0.5, 0.5}), 0.5, 1e-15);
  EXPECT_NEAR(total_variation({5, 5}, {0.5, 0.25}), 0.25, 1e-15);
  EXPECT_NEAR(total_variation({5, 4}, {0.5, 0.4}, 1), 0.0, 1e-15);
}

TEST(KsExponential, NullPasses) {
  const TestReport r = ks_exponential_test(exponential_samples(12.0, 10000, 1), 12.0);
  EXPECT_TRUE(r.pass) << r.p_value_or_margin;
}

TEST(KsExponential, WrongRateFails) {
  const TestReport r = ks_exponential_test(exponential_samples(6.0, 10000, 2), 12.0);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.p_value_or_margin, 1e-10);
}

TEST(KsExponential, NeedsSamples) {
  EXPECT_THROW(ks_exponential_test({}, 12.0), std::invalid_argument);
  EXPECT_THROW(ks_exponential_test(exponential_samples(1.0, 50, 3), 1.0), std::invalid_argument);
}

TEST(JumpCounter, Examples) {
  CadlagPath flat;
  flat.push(0.0, 0.0);
  flat.push(3.0, 1.0);
  EXPECT_EQ(jump_counter(flat, 0.0, 3.0, 1.0), 0);
  CadlagPath p;
  p.push(0.0, 0.0);
  p.push_jump(1.0, 0.5);
  p.push_jump(2.0, 2.0);
  p.push(3.0, 2.5);
  EXPECT_EQ(jump_counter(p, 0.0, 3.0, 1.0), 1);
  EXPECT_EQ(jump_counter(p, 0.0, 3.0, 0.5), 2);
  EXPECT_EQ(jump_counter(p, 1.5, 3.0, 0.1), 1);
  EXPECT_THROW(jump_counter(p, 2.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(jump_counter(p, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(EmpiricalTransform, ZeroArgumentIsOne) {
  const EmpiricalTransform t = empirical_laplace({0.3, 1.2, 5.0}, {0.0, 1.0});
  EXPECT_EQ(t.estimates[0], 1.0);
  EXPECT_EQ(t.stderrs[0], 0.0);
  EXPECT_GT(t.estimates[1], 0.0);
  EXPECT_LE(t.estimates[1], 1.0);
}

TEST(EmpiricalTransform, StderrShrinksWithReplicas) {
  const auto a = empirical_laplace(exponential_samples(1.0, 4000, 4), {1.0});
  const auto b = empirical_laplace(exponential_samples(1.0, 16000, 5), {1.0});
  EXPECT_NEAR(a.stderrs[0] / b.stderrs[0], 2.0, 0.15);
  EXPECT_NEAR(b.estimates[0], 0.5, 4 * b.stderrs[0]);
}

TEST(Bridge, SmallRun) {
  const BridgeResult b = bridge_experiment({4, 6}, 0.5, 50, 3, {0.0, 1.0});
  ASSERT_EQ(b.points.size(), 2u);
  for (const BridgePoint& pt : b.points) {
    EXPECT_EQ(pt.perimeter.estimates[0], 1.0);
    EXPECT_EQ(pt.volume.estimates[0], 1.0);
    EXPECT_DOUBLE_EQ(pt.effective_r, static_cast<double>(pt.radius) / pt.n);
  }
  EXPECT_EQ(b.points[0].radius, 2);
  EXPECT_EQ(b.points[1].radius, 3);
  EXPECT_EQ(bridge_csv(b).substr(0, 8), "n,radius");
}

TEST(Bridge, ContinuumTargetFixture) {
  EXPECT_NEAR(joint_transform(1.0, 0.0, 0.5), 0.788563, 1e-6);
}

TEST(Reports, JsonUsesDecimalStrings) {
  TestReport r;
  r.name = "x";
  r.statistic = 0.1;
  r.pass = true;
  r.config = {{"seed", "7"}};
  const auto j = nlohmann::json::parse(reports_to_json({r}));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["statistic"], "0.1");
  EXPECT_EQ(j[0]["config"]["seed"], "7");
  EXPECT_EQ(j[0]["pass"], true);
}

TEST(Io, TransformTable) {
  EXPECT_EQ(transform_table_csv({{0.5, 1.0, 0.0, 0.25}}), "r,lambda,mu,transform_value\n0.5,1,0,0.25\n");
  EXPECT_EQ(decimal_string(0.1), "0.1");
}
