#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace hyperplane {

// Philox4x32-10 (Salmon et al., SC'11).
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key);

uint64_t splitmix64(uint64_t x);

// Combine two 64-bit values into a stream identifier.
uint64_t mix_ids(uint64_t a, uint64_t b);

// Counter-based random stream. The 128-bit Philox counter is (position, stream id)
// and the key is the user seed, so streams never overlap and can be created in any
// order from any thread.
class Stream {
 public:
  Stream(uint64_t seed, uint64_t stream_id);

  // Independent stream keyed by (this stream's id, tag). Does not consume draws.
  Stream substream(uint64_t tag) const;

  uint32_t next_u32();
  uint64_t next_u64();
  // Uniform on the open interval (0,1), 53 random bits.
  double uniform();
  double normal();
  double exponential();
  // Sum of three squared standard normals (gamma with shape 3/2, rate 1/2).
  double chi_square3();
  uint64_t poisson(double mean);

  // Fill out[0 .. 4*nblocks) with raw 32-bit words from the next nblocks counter
  // blocks, laid out word-major (all first words, then all second words, ...).
  void fill_blocks_u32(uint32_t* out, std::size_t nblocks);

  uint64_t seed() const { return seed_; }
  uint64_t id() const { return id_; }
  uint64_t position() const { return counter_; }

 private:
  void refill();

  uint64_t seed_;
  uint64_t id_;
  uint64_t counter_ = 0;
  std::array<uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Stream for replica k of a run with the given seed and purpose tag.
Stream replica_stream(uint64_t seed, uint64_t purpose, uint64_t replica);

namespace stream_purpose {
inline constexpr uint64_t kPeel = 0x7065656cULL;
inline constexpr uint64_t kFill = 0x66696c6cULL;
inline constexpr uint64_t kLevy = 0x6c657679ULL;
inline constexpr uint64_t kMartingale = 0x6d617274ULL;
inline constexpr uint64_t kNu = 0x6e75ULL;
inline constexpr uint64_t kTest = 0x74657374ULL;
}  // namespace stream_purpose

}  // namespace hyperplane
