#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mbanach/kernels.hpp"
#include "mbanach/weights.hpp"

using namespace mbanach;

namespace {

class Threads : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = thread_count();
    set_thread_count(4);
  }
  void TearDown() override { set_thread_count(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

using Kernels = Threads;

TEST_F(Kernels, WeighAllAgreesAcrossExecutions) {
  EnumCaps caps;
  caps.max_cells = 6;
  caps.samples = 300;
  caps.seed = 9;
  for (const auto& x : {min_scalar_set(std::vector<Complex>{1.0, -1.0, Complex(0, 1)}),
                        amax_scalar_set(std::vector<Complex>{1.0, 0.5}),
                        zx_set(min_scalar_set(std::vector<Complex>{1.0, 2.0}))}) {
    const ArrayEnumeration stream(x->size(), caps);
    const auto serial = weigh_all_serial(*x, stream);
    EXPECT_EQ(serial, weigh_all_omp(*x, stream));
    EXPECT_EQ(serial, weigh_all(*x, stream, Execution::parallel));
    EXPECT_EQ(serial.size(), stream.size());
  }
}

TEST_F(Kernels, ExtremaAgreeAcrossExecutions) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(0, 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + trial * 37);
    for (auto& x : v) x = d(rng) / 7.0;
    const Extremum a = max_first_serial(v);
    const Extremum b = max_first_omp(v);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.index, b.index);
    const Extremum c = min_first_serial(v);
    const Extremum e = min_first_omp(v);
    EXPECT_EQ(c.value, e.value);
    EXPECT_EQ(c.index, e.index);
  }
}

TEST(Extrema, FirstIndexWinsTies) {
  const std::vector<double> v{1.0, 3.0, 2.0, 3.0, 0.5, 0.5};
  const Extremum top = max_first_serial(v);
  EXPECT_EQ(top.index, 1u);
  EXPECT_EQ(top.value, 3.0);
  EXPECT_EQ(min_first_serial(v).index, 4u);
  // Values within a relative 1e-12 count as ties.
  const std::vector<double> near{1.0, 2.0 - 1e-15, 2.0};
  EXPECT_EQ(max_first_serial(near).index, 1u);
}

TEST(Extrema, SkipsNaNAndHandlesEmpty) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> v{nan, 2.0, nan};
  EXPECT_EQ(max_first_serial(v).index, 1u);
  EXPECT_EQ(max_first_omp(v).index, 1u);
  EXPECT_FALSE(max_first_serial(std::vector<double>{nan}).found);
  EXPECT_FALSE(min_first_serial(std::vector<double>{}).found);
}

TEST_F(Kernels, ParallelMapRethrowsFirstError) {
  try {
    map_indices(
        1000,
        [](std::size_t k) -> int {
          if (k % 100 == 37) throw std::runtime_error("fail " + std::to_string(k));
          return static_cast<int>(k);
        },
        Execution::parallel);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "fail 37");
  }
}
