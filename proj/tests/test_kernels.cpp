#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "wiso/kernels.hpp"
#include "wiso/rng.hpp"

using namespace wiso;
using namespace wiso::kernels;
using wiso::test::rel_err;
using wiso::test::thrown_code;

namespace {

std::vector<double> random_row(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

// Compares one variant to the scalar reference on rows of every length up to 70.
void check_against_scalar(const KernelTable& k) {
  const KernelTable& ref = table(Isa::Scalar);
  Rng rng(77);
  for (std::size_t n = 2; n <= 70; ++n) {
    const auto below = random_row(rng, n, -1, 1), row = random_row(rng, n, -1, 1), above = random_row(rng, n, -1, 1);
    std::vector<double> g_ref(n), g(n);
    ref.gradient_sq_row(below.data(), row.data(), above.data(), n, 3.5, 1.25, g_ref.data());
    k.gradient_sq_row(below.data(), row.data(), above.data(), n, 3.5, 1.25, g.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(g[i] - g_ref[i]) <= 1e-14 * (1.0 + g_ref[i]));

    const auto pos = random_row(rng, n, 0, 2);
    CHECK(rel_err(k.sum(row.data(), n), ref.sum(row.data(), n)) < 1e-13 * n);
    CHECK(rel_err(k.sum_sqrt(pos.data(), n), ref.sum_sqrt(pos.data(), n)) < 1e-14 * n);
    CHECK(rel_err(k.sum_squares(row.data(), n), ref.sum_squares(row.data(), n)) < 1e-14 * n);
    CHECK(rel_err(k.sum_abs(row.data(), n), ref.sum_abs(row.data(), n)) < 1e-14 * n);
  }
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference hand values") {
    const KernelTable& k = table(Isa::Scalar);
    const std::vector<double> below{0, 0, 0}, row{1, 2, 4}, above{1, 1, 1};
    std::vector<double> g(3);
    k.gradient_sq_row(below.data(), row.data(), above.data(), 3, 0.5, 1.0, g.data());
    // gx: one-sided (2-1), central (4-1)/2, one-sided (4-2); gy = 1.
    CHECK(g[0] == 1.0 + 1.0);
    CHECK(g[1] == 2.25 + 1.0);
    CHECK(g[2] == 4.0 + 1.0);
    CHECK(k.sum(row.data(), 3) == 7.0);
    CHECK(k.sum_squares(row.data(), 3) == 21.0);
    CHECK(k.sum_sqrt(row.data(), 3) == doctest::Approx(1.0 + std::sqrt(2.0) + 2.0));
    const std::vector<double> neg{-1, 2, -3};
    CHECK(k.sum_abs(neg.data(), 3) == 6.0);
  }

  TEST_CASE("every available variant agrees with the scalar reference") {
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
      if (!isa_available(isa)) {
        CHECK(thrown_code([&] { table(isa); }) == ErrorCode::Domain);
        continue;
      }
      CAPTURE(isa_name(isa));
      check_against_scalar(table(isa));
    }
    check_against_scalar(active());
  }

  TEST_CASE("variants are deterministic") {
    Rng rng(3);
    const auto v = random_row(rng, 1001, -5, 5);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (!isa_available(isa)) continue;
      const KernelTable& k = table(isa);
      CHECK(k.sum(v.data(), v.size()) == k.sum(v.data(), v.size()));
      CHECK(k.isa == isa);
    }
  }

  TEST_CASE("names") {
    CHECK(isa_name(Isa::Scalar) == "scalar");
    CHECK(isa_name(Isa::Avx2) == "avx2");
    CHECK(isa_name(Isa::Neon) == "neon");
    CHECK(isa_available(Isa::Scalar));
  }
}
