#pragma once

#include <cstdint>

#include "sptkit/linalg.hpp"

namespace sptkit {

// Counter-based generator: output k is splitmix64(key, stream, k). Copyable, no hidden state
// beyond the counter, so any draw can be reproduced from (key, stream, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t stream = 0) : key_(key), stream_(stream) {}

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();
  cplx unit_disk();  // uniform on |z| <= 1
  cplx complex_normal();

  Mat unit_disk_matrix(Eigen::Index rows, Eigen::Index cols);
  Vec haar_state(Eigen::Index dim);
  Mat haar_unitary(Eigen::Index dim);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sptkit
