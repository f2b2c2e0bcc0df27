#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hyperplane/kernels.hpp"
#include "hyperplane/rng.hpp"

using namespace hyperplane;

// Known-answer vectors from the Random123 distribution (kat_vectors, philox4x32 10 rounds).
TEST(Philox, KnownAnswers) {
  auto a = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(a, (std::array<uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  auto b = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(b, (std::array<uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  auto c = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(c, (std::array<uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Stream, Reproducible) {
  Stream a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Stream, SubstreamDoesNotConsume) {
  Stream a(1, 2), b(1, 2);
  (void)a.substream(99);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  Stream s1 = a.substream(5), s2 = b.substream(5);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
}

TEST(Stream, UniformOpenInterval) {
  Stream s(3, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Stream, SamplerMoments) {
  Stream s(11, 1);
  const int n = 200000;
  double m_norm = 0, v_norm = 0, m_exp = 0, m_chi = 0, m_pois_small = 0, m_pois_big = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m_norm += z;
    v_norm += z * z;
    m_exp += s.exponential();
    m_chi += s.chi_square3();
    m_pois_small += static_cast<double>(s.poisson(3.5));
    m_pois_big += static_cast<double>(s.poisson(250.0));
  }
  EXPECT_NEAR(m_norm / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(v_norm / n, 1.0, 4 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m_exp / n, 1.0, 4 / std::sqrt(n));
  EXPECT_NEAR(m_chi / n, 3.0, 4 * std::sqrt(6.0 / n));
  EXPECT_NEAR(m_pois_small / n, 3.5, 4 * std::sqrt(3.5 / n));
  EXPECT_NEAR(m_pois_big / n, 250.0, 4 * std::sqrt(250.0 / n));
}

TEST(Stream, BlockFillMatchesScalarPath) {
  Stream a(5, 9), b(5, 9);
  const std::size_t nblocks = 37;
  std::vector<uint32_t> words(4 * nblocks);
  a.fill_blocks_u32(words.data(), nblocks);
  for (std::size_t blk = 0; blk < nblocks; ++blk) {
    for (std::size_t w = 0; w < 4; ++w) EXPECT_EQ(words[w * nblocks + blk], b.next_u32());
  }
  EXPECT_EQ(a.position(), b.position());
}

TEST(Kernels, BandWeightMatchesReference) {
  Stream s(8, 8);
  std::vector<uint32_t> u(4 * 1000);
  s.fill_blocks_u32(u.data(), 1000);
  const double eps = 1e-3, vmin = std::pow(eps, 1.5);
  const double fast = kernels::stable_band_log_weight(u.data(), u.size(), eps, vmin);
  const double ref = kernels::stable_band_log_weight_reference(u.data(), u.size(), eps, vmin);
  EXPECT_NEAR(fast, ref, 1e-10 * std::fabs(ref));
}
