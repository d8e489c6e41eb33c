#include <doctest.h>

#include <cstdint>
#include <vector>

#include "coverpack/rng.hpp"

using namespace coverpack;

TEST_SUITE("rng") {

TEST_CASE("the stream for a seed is pinned") {
  // These constants freeze the generator's output; any change to seeding or
  // state transitions is a break in the seed contract and must fail here.
  Rng rng(42);
  CHECK(rng.next() == 1546998764402558742ULL);
  CHECK(rng.next() == 6990951692964543102ULL);
  CHECK(rng.next() == 12544586762248559009ULL);
  CHECK(rng.next() == 17057574109182124193ULL);

  Rng again(42);
  CHECK(again.uniform() == doctest::Approx(0.083862971059882163).epsilon(1e-15));
  CHECK(again.uniform() == doctest::Approx(0.37898025066266861).epsilon(1e-15));
  CHECK(again.uniform() == doctest::Approx(0.68004341102813937).epsilon(1e-15));
}

TEST_CASE("same seed, same stream; different seed, different stream") {
  Rng a(123), b(123), c(124);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 256; ++i) {
    std::uint64_t x = a.next();
    all_equal = all_equal && (x == b.next());
    any_diff = any_diff || (x != c.next());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform stays in [0,1) and fills the range") {
  Rng rng(9);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = rng.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform(a,b) respects its bounds") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    double x = rng.uniform(-2.0, 3.0);
    CHECK(x >= -2.0);
    CHECK(x < 3.0);
  }
}

TEST_CASE("below covers all residues roughly uniformly") {
  Rng rng(7);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) ++counts[rng.below(10)];
  for (int c : counts) {
    CHECK(c > 800);
    CHECK(c < 1200);
  }
}

TEST_CASE("below(1) is always zero") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) CHECK(rng.below(1) == 0);
}

TEST_CASE("uniform_int hits both endpoints") {
  Rng rng(11);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 1000; ++i) {
    long long x = rng.uniform_int(-3, 3);
    CHECK(x >= -3);
    CHECK(x <= 3);
    saw_lo = saw_lo || x == -3;
    saw_hi = saw_hi || x == 3;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
  CHECK(rng.uniform_int(5, 5) == 5);
}

TEST_CASE("bernoulli frequency tracks p") {
  Rng rng(13);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += rng.bernoulli(0.3) ? 1 : 0;
  CHECK(hits > 2700);
  CHECK(hits < 3300);
  Rng edge(14);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(edge.bernoulli(0.0));
}

}  // TEST_SUITE
