#include <cmath>

#include <gtest/gtest.h>

#include "hyperplane/continuum.hpp"
#include "hyperplane/levy.hpp"
#include "hyperplane/stats.hpp"

using namespace hyperplane;

TEST(CadlagPath, JumpBookkeeping) {
  CadlagPath p;
  p.push(0.0, 1.0);
  p.push(0.5, 2.0);
  p.push_jump(1.0, -0.5);
  p.push(2.0, 3.0);
  EXPECT_EQ(p.check_invariants(), "");
  EXPECT_DOUBLE_EQ(p.value_at(0.7), 2.0);
  EXPECT_DOUBLE_EQ(p.value_at(1.0), 1.5);
  EXPECT_DOUBLE_EQ(p.left_limit(1.0), 2.0);
  EXPECT_DOUBLE_EQ(p.left_limit(0.7), 2.0);
  ASSERT_EQ(p.jumps().size(), 1u);
  EXPECT_EQ(p.jumps()[0].knot, 3u);
  EXPECT_THROW(p.value_at(-0.1), std::domain_error);
  EXPECT_THROW(p.push(1.5, 0.0), std::logic_error);
  EXPECT_THROW(p.push_jump(1.0, 1.0), std::logic_error);
}

TEST(CadlagPath, Csv) {
  CadlagPath p;
  p.push(0.0, 1.0);
  p.push_jump(0.25, 2.0);
  EXPECT_EQ(p.to_csv(), "t,value,jump_flag\n0,1,0\n0.25,1,0\n0.25,3,1\n");
}

TEST(BackwardLevy, PathShape) {
  Stream rng = replica_stream(1, stream_purpose::kLevy, 0);
  const CadlagPath p = simulate_backward_levy(2.0, 1e-3, rng);
  EXPECT_EQ(p.check_invariants(), "");
  EXPECT_DOUBLE_EQ(p.end_time(), 2.0);
  EXPECT_FALSE(p.jumps().empty());
  for (const PathJump& j : p.jumps()) EXPECT_LE(j.size, -1e-3);
  EXPECT_THROW(simulate_backward_levy(1.0, 0.0, rng), std::domain_error);
}

TEST(BackwardLevy, MeanAndExponentialMoment) {
  const int n = 4000;
  std::vector<double> x(n), e(n);
  for (int k = 0; k < n; ++k) {
    Stream rng = replica_stream(2, stream_purpose::kLevy, static_cast<uint64_t>(k));
    const double v = simulate_backward_levy(1.0, 1e-3, rng).back();
    x[static_cast<std::size_t>(k)] = v;
    e[static_cast<std::size_t>(k)] = std::exp(0.5 * v);
  }
  const MeanEstimate m = mean_stderr(x), me = mean_stderr(e);
  EXPECT_NEAR(m.mean, 2 * std::sqrt(2.0), 4 * m.stderr_);
  EXPECT_NEAR(me.mean, std::exp(std::sqrt(8.0 / 3.0) * 0.5 * std::sqrt(3.5)), 4 * me.stderr_);
}

TEST(PerimeterVolume, PathInvariants) {
  Stream rng = replica_stream(3, stream_purpose::kLevy, 0);
  const PVPaths pv = simulate_PV(1.0, 1e-6, 1e-3, rng);
  EXPECT_EQ(pv.P.check_invariants(), "");
  EXPECT_EQ(pv.V.check_invariants(), "");
  EXPECT_DOUBLE_EQ(pv.P.end_time(), 1.0);
  EXPECT_DOUBLE_EQ(pv.V.end_time(), 1.0);
  EXPECT_DOUBLE_EQ(pv.P.back(), pv.P_end);
  for (double v : pv.P.values()) EXPECT_GT(v, 0.0);
  for (std::size_t i = 1; i < pv.V.values().size(); ++i) EXPECT_GE(pv.V.values()[i], pv.V.values()[i - 1]);
  for (const PathJump& j : pv.P.jumps()) EXPECT_LT(j.size, 0.0);
  for (const PathJump& j : pv.V.jumps()) EXPECT_GT(j.size, 0.0);
}

TEST(PerimeterVolume, Reproducible) {
  Stream a = replica_stream(4, stream_purpose::kLevy, 7), b = replica_stream(4, stream_purpose::kLevy, 7);
  const PVPaths x = simulate_PV(0.5, 1e-6, 1e-3, a), y = simulate_PV(0.5, 1e-6, 1e-3, b);
  EXPECT_EQ(x.P.to_csv(), y.P.to_csv());
  EXPECT_EQ(x.V.to_csv(), y.V.to_csv());
}

TEST(PerimeterVolume, MarginalTransform) {
  const int n = 2000;
  for (double r : {0.25, 1.0}) {
    const double lambda = 1.0 / (r * r);
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) {
      Stream rng = replica_stream(5, stream_purpose::kLevy, static_cast<uint64_t>(k));
      v[static_cast<std::size_t>(k)] = std::exp(-lambda * simulate_PV(r, 1e-6, 1e-3, rng).P_end);
    }
    const MeanEstimate m = mean_stderr(v);
    EXPECT_NEAR(m.mean, marginal_transform_X(lambda, r), 4 * m.stderr_) << r;
  }
}

TEST(PerimeterVolume, JointTransform) {
  const int n = 2000;
  const double r = 1.0;
  std::vector<double> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    Stream rng = replica_stream(6, stream_purpose::kLevy, static_cast<uint64_t>(k));
    const PVPaths pv = simulate_PV(r, 1e-6, 1e-3, rng);
    a[static_cast<std::size_t>(k)] = std::exp(-0.3 * pv.P_end - 0.5 * pv.V_end);
    b[static_cast<std::size_t>(k)] = std::exp(-4.0 * pv.V_end);
  }
  const MeanEstimate ma = mean_stderr(a), mb = mean_stderr(b);
  EXPECT_NEAR(ma.mean, joint_transform(0.3, 0.5, r), 4 * ma.stderr_);
  EXPECT_NEAR(mb.mean, joint_transform(0.0, 4.0, r), 4 * mb.stderr_);
}

TEST(PerimeterVolume, SurvivalMatchesRejection) {
  // An unconditioned path that reaches the horizon without hitting 0 is counted as surviving.
  PVOptions opt;
  opt.conditioning = Conditioning::Rejection;
  opt.rejection_budget = 1;
  const int n = 1500;
  for (double x0 : {0.05, 0.2}) {
    int survived = 0;
    for (int k = 0; k < n; ++k) {
      Stream rng = replica_stream(7, stream_purpose::kLevy, static_cast<uint64_t>(k));
      try {
        simulate_PV(2.0, x0, 1e-3, rng, opt);
        ++survived;
      } catch (const std::runtime_error&) {
      }
    }
    const double p = survival_probability(x0);
    EXPECT_NEAR(static_cast<double>(survived) / n, p, 4 * std::sqrt(p * (1 - p) / n)) << x0;
  }
}

TEST(PerimeterVolume, RejectionAgreesWithTransformFromSameStart) {
  PVOptions rej;
  rej.conditioning = Conditioning::Rejection;
  const int n = 2000;
  std::vector<double> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    Stream r1 = replica_stream(8, stream_purpose::kLevy, static_cast<uint64_t>(k));
    Stream r2 = replica_stream(9, stream_purpose::kLevy, static_cast<uint64_t>(k));
    a[static_cast<std::size_t>(k)] = std::exp(-0.2 * simulate_PV(0.5, 1.0, 1e-3, r1).P_end);
    b[static_cast<std::size_t>(k)] = std::exp(-0.2 * simulate_PV(0.5, 1.0, 1e-3, r2, rej).P_end);
  }
  const MeanEstimate ma = mean_stderr(a), mb = mean_stderr(b);
  EXPECT_NEAR(ma.mean, mb.mean, 4 * std::hypot(ma.stderr_, mb.stderr_));
}

TEST(PerimeterVolume, RejectsBadInput) {
  Stream rng(1, 1);
  EXPECT_THROW(simulate_PV(0.0, 1.0, 1e-3, rng), std::domain_error);
  EXPECT_THROW(simulate_PV(1.0, 0.0, 1e-3, rng), std::domain_error);
  EXPECT_THROW(simulate_PV(1.0, 1.0, 0.5, rng), std::domain_error);
}

TEST(Martingale, KernelMatchesReference) {
  const MartingaleEstimate a = martingale_check(1.0, 200, 1e-3, 11);
  const MartingaleEstimate b = martingale_check_reference(1.0, 200, 1e-3, 11);
  EXPECT_NEAR(a.estimate, b.estimate, 1e-12 * b.estimate);
  EXPECT_NEAR(a.stderr_, b.stderr_, 1e-9 * b.stderr_);
}

TEST(Martingale, ThreadCountDoesNotMatter) {
  const MartingaleEstimate a = martingale_check(1.0, 300, 1e-2, 12, 1);
  const MartingaleEstimate b = martingale_check(1.0, 300, 1e-2, 12, 3);
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(Martingale, MeanIsOne) {
  const MartingaleEstimate e = martingale_check(1.0, 20000, 1e-2, 13);
  EXPECT_NEAR(e.estimate, 1.0, 4 * e.stderr_);
  EXPECT_LE(e.max_jump_factor, 1.0);
  EXPECT_THROW(martingale_check(1.0, 1, 1e-2, 1), std::domain_error);
}
