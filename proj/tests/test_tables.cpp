#include <gtest/gtest.h>

#include <cmath>

#include "hyperplane/tables.hpp"

using namespace hyperplane;

TEST(Tables, RecurrenceResidual) {
  for (double ratio : {1.0, 0.9, 0.5}) {
    const auto t = BoltzmannTables::build(LambdaParams::from_ratio(ratio), 64);
    for (int p = 1; p <= 64; ++p) EXPECT_LE(t->recurrence_residual(p), 1e-10) << ratio << " " << p;
  }
}

TEST(Tables, FirstMarkovConstantIsInverseWeight) {
  const auto params = LambdaParams::from_ratio(0.9);
  const auto t = BoltzmannTables::build(params, 8);
  EXPECT_NEAR(t->C(1) * params.lambda, 1.0, 1e-15);
}

TEST(Tables, ScaledValuesMatchDirectFormulas) {
  const auto params = LambdaParams::critical();
  const auto t = BoltzmannTables::build(params, 300);
  for (int p : {1, 2, 3, 10, 50}) {
    EXPECT_NEAR(t->Z(p) / partition_function(params, p), 1.0, 1e-13);
    EXPECT_NEAR(t->C(p) / markov_constant(params, p), 1.0, 1e-13);
  }
  for (int p = 1; p <= 301; ++p) {
    EXPECT_GT(t->z_scaled(p), 0.0);
    EXPECT_GT(t->c_scaled(p), 0.0);
  }
}

TEST(Tables, JsonRoundTrip) {
  const auto t = BoltzmannTables::build(LambdaParams::from_ratio(0.7), 20, 40);
  const auto u = BoltzmannTables::from_json(t->to_json());
  EXPECT_EQ(u->p_max(), 20);
  EXPECT_EQ(u->precision_digits(), 40);
  EXPECT_EQ(u->params().deficit, t->params().deficit);
  for (int p = 1; p <= 21; ++p) {
    EXPECT_NEAR(u->z_scaled(p) / t->z_scaled(p), 1.0, 1e-15);
    EXPECT_NEAR(u->c_scaled(p) / t->c_scaled(p), 1.0, 1e-15);
  }
  EXPECT_EQ(u->to_json(), t->to_json());
}

TEST(Tables, CacheGrowsGeometrically) {
  const auto params = LambdaParams::from_ratio(0.77);
  const auto a = tables_for(params, 10);
  EXPECT_EQ(a->p_max(), 64);
  EXPECT_EQ(tables_for(params, 64).get(), a.get());
  const auto b = tables_for(params, 65);
  EXPECT_EQ(b->p_max(), 128);
  EXPECT_EQ(tables_for(params, 1000)->p_max(), 1024);
}
