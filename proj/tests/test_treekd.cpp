#include <doctest.h>

#include "swdft/bench.hpp"
#include "swdft/oracle.hpp"
#include "swdft/tree1d.hpp"
#include "swdft/tree2d.hpp"
#include "swdft/treekd.hpp"
#include "test_support.hpp"

using namespace swdft;
using swdft::testing::bitwise_equal;
using swdft::testing::max_abs_diff;

namespace {

using C = ComplexSample;

// out[idx[perm[0]], idx[perm[1]], ...] = x[idx]
NdArray permute_axes(const NdArray& x, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> dims(perm.size());
  for (std::size_t d = 0; d < perm.size(); ++d) dims[d] = x.extent(perm[d]);
  NdArray out(dims);
  std::vector<std::size_t> idx(perm.size(), 0), moved(perm.size());
  const std::vector<std::size_t> zero(perm.size(), 0);
  do {
    for (std::size_t d = 0; d < perm.size(); ++d) moved[d] = idx[perm[d]];
    out.at(moved) = x.at(idx);
  } while (next_index(idx, zero, x.dims()));
  return out;
}

}  // namespace

TEST_CASE("level plan ordering and shifts") {
  const auto plan = build_level_plan(WindowSpec({2, 2}));
  REQUIRE(plan.levels.size() == 4);
  const std::size_t dims[] = {1, 1, 0, 0};
  const std::size_t shifts[] = {2, 1, 2, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(plan.levels[i].geometry.level == i + 1);
    CHECK(plan.levels[i].geometry.dim == dims[i]);
    CHECK(plan.levels[i].geometry.shift == shifts[i]);
  }

  const auto cube = build_level_plan(WindowSpec({1, 1, 1}));
  REQUIRE(cube.levels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(cube.levels[i].geometry.dim == 2 - i);
    CHECK(cube.levels[i].geometry.shift == 1);
    CHECK(cube.levels[i].modulus_exponent == 0);
  }

  const auto mixed = build_level_plan(WindowSpec({2, 0, 3}));
  REQUIRE(mixed.levels.size() == 5);
  for (const auto& entry : mixed.levels) {
    const std::size_t l = entry.geometry.level;
    CHECK(entry.modulus_exponent == l - 1 - entry.geometry.inner_bits);
    CHECK(entry.geometry.dim != 1);
  }
}

TEST_CASE("3D and 4D trees agree with the naive oracle") {
  std::mt19937_64 rng(101);
  struct Case {
    std::vector<std::size_t> dims;
    std::vector<unsigned> exps;
  };
  const std::vector<Case> cases = {
      {{6, 6, 6}, {1, 1, 1}}, {{8, 6, 6}, {2, 1, 1}}, {{5, 7, 6}, {0, 2, 1}},
      {{4, 4, 4, 4}, {1, 1, 1, 1}}, {{6, 5, 4}, {2, 2, 2}},
  };
  for (const auto& c : cases) {
    const NdArray x = testing::random_complex(c.dims, rng);
    const WindowSpec spec(c.exps);
    CHECK_MESSAGE(max_abs_diff(tree_swdft_kd(x, spec), oracle::swdft_kd_naive(x, spec)) <= 1e-10,
                  spec.to_string());
  }
}

TEST_CASE("rank 1 and 2 reproduce the dedicated trees bit for bit") {
  std::mt19937_64 rng(103);
  const NdArray signal = testing::random_complex({37}, rng);
  for (unsigned m = 0; m <= 4; ++m) {
    const WindowSpec spec({m});
    CHECK(bitwise_equal(tree_swdft_kd(signal, spec), tree_swdft_1d(signal, spec)));
  }
  const NdArray image = testing::random_complex({14, 13}, rng);
  for (unsigned m0 = 0; m0 <= 3; ++m0) {
    for (unsigned m1 = 0; m1 <= 3; ++m1) {
      const WindowSpec spec({m0, m1}, Normalization::unitary);
      CHECK(bitwise_equal(tree_swdft_kd(image, spec), tree_swdft_2d(image, spec)));
    }
  }
}

TEST_CASE("kD thread count does not change a bit") {
  std::mt19937_64 rng(107);
  const NdArray x = testing::random_complex({7, 6, 9}, rng);
  const WindowSpec spec({1, 2, 2});
  TransformOptions threaded;
  threaded.threads = 4;
  CHECK(bitwise_equal(tree_swdft_kd(x, spec), tree_swdft_kd(x, spec, threaded)));
}

TEST_CASE("kD operation counts") {
  const std::vector<std::size_t> dims = {7, 6, 5};
  std::mt19937_64 rng(109);
  const NdArray x = testing::random_complex(dims, rng);
  for (const auto& exps : std::vector<std::vector<unsigned>>{{1, 1, 1}, {2, 1, 2}, {0, 2, 1}}) {
    const WindowSpec spec(exps);
    OpCounter ops;
    ops.track_positions(x.size());
    TransformOptions options;
    options.ops = &ops;
    (void)tree_swdft_kd(x, spec, options);

    testing::DependencyWalker walker(dims, exps);
    std::uint64_t expected = 0;
    for (std::ptrdiff_t a = 0; a < 7; ++a) {
      for (std::ptrdiff_t b = 0; b < 6; ++b) {
        for (std::ptrdiff_t c = 0; c < 5; ++c) {
          for (std::size_t l = 1; l <= spec.total_levels(); ++l) {
            if (walker.computable({a, b, c}, l)) expected += std::size_t{1} << l;
          }
        }
      }
    }
    CHECK(ops.total() == expected);
    CHECK(ops.total() == bench::tree_op_breakdown(dims, spec).total);

    const std::uint64_t per_window = 2 * (spec.volume() - 1);
    for (std::size_t a = spec.size(0) - 1; a < 7; ++a) {
      for (std::size_t b = spec.size(1) - 1; b < 6; ++b) {
        for (std::size_t c = spec.size(2) - 1; c < 5; ++c) {
          CHECK(ops.per_position()[(a * 6 + b) * 5 + c] == per_window);
        }
      }
    }
  }
}

TEST_CASE("permuting axes permutes the output") {
  std::mt19937_64 rng(113);
  const NdArray x = testing::random_complex({6, 7, 5}, rng);
  const std::vector<unsigned> exps = {1, 2, 0};
  const std::vector<std::size_t> perm = {2, 0, 1};
  const auto c = tree_swdft_kd(x, WindowSpec(exps));
  const auto t = tree_swdft_kd(permute_axes(x, perm), WindowSpec({exps[2], exps[0], exps[1]}));

  double worst = 0.0;
  std::vector<std::size_t> q(3, 0), k(3, 0), qp(3), kp(3);
  const std::vector<std::size_t> zero(3, 0);
  const auto positions = c.positions();
  const std::vector<std::size_t> sizes = {2, 4, 1};
  do {
    std::fill(k.begin(), k.end(), 0);
    do {
      for (std::size_t d = 0; d < 3; ++d) {
        qp[d] = q[perm[d]];
        kp[d] = k[perm[d]];
      }
      worst = std::max(worst, std::abs(c.at(q, k) - t.at(qp, kp)));
    } while (next_index(k, zero, sizes));
  } while (next_index(q, zero, positions));
  CHECK(worst <= 1e-10);
}

TEST_CASE("kD lattice cursor and errors") {
  const NdArray x({4, 4, 4});
  TreeLatticeKD lattice(x, WindowSpec({1, 1, 1}));
  const auto& plan = lattice.plan();
  CHECK_THROWS_AS(lattice.kd_level_step(plan.levels[1]), StateError);
  CHECK_THROWS_AS((void)lattice.extract(), StateError);
  lattice.kd_level_step(plan.levels[0]);
  CHECK(lattice.tree(63).size() == 2);
  lattice.kd_level_step(plan.levels[1]);
  lattice.kd_level_step(plan.levels[2]);
  CHECK(lattice.level() == lattice.final_level());
  CHECK_NOTHROW((void)lattice.extract());

  CHECK_THROWS_AS(tree_swdft_kd(x, WindowSpec({3, 1, 1})), WindowTooLargeError);
  CHECK_THROWS_AS(tree_swdft_kd(x, WindowSpec({1, 1})), ShapeError);
  TransformOptions tight;
  tight.memory_budget = 64;
  CHECK_THROWS_AS(tree_swdft_kd(x, WindowSpec({1, 1, 1}), tight), BudgetExceededError);
}
