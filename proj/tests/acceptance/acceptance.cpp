// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

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

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int criterion, const char* title, const Verdict& v, const std::string& summary) {
  std::printf("criterion %d (%s): %s  %s%s%s\n", criterion, title, v.pass ? "PASS" : "FAIL",
              summary.c_str(), v.pass ? "" : "  first failure: ", v.pass ? "" : v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Shared corpus for criteria 1 and 2: 50 arrays with extents in [8, 16].
std::vector<NdArray> oracle_corpus() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> extent(8, 16);
  std::vector<NdArray> corpus;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = extent(rng);
    const std::size_t b = extent(rng);
    corpus.push_back(testing::random_complex({a, b}, rng));
  }
  corpus.back() = testing::random_complex({16, 16}, rng);
  return corpus;
}

std::vector<WindowSpec> all_shapes() {
  std::vector<WindowSpec> shapes;
  for (unsigned m0 = 0; m0 <= 3; ++m0) {
    for (unsigned m1 = 0; m1 <= 3; ++m1) shapes.emplace_back(std::vector<unsigned>{m0, m1});
  }
  return shapes;
}

void criteria_1_and_2() {
  const auto corpus = oracle_corpus();
  const auto shapes = all_shapes();
  Verdict v1, v2;
  double worst = 0.0;
  std::size_t cases = 0, exact = 0;
  const auto start = Clock::now();
  std::vector<CoefficientArray> trees;
  for (const NdArray& x : corpus) {
    for (const WindowSpec& spec : shapes) {
      const auto tree = tree_swdft_2d(x, spec);
      const double err = max_abs_diff(tree, oracle::swdft_2d_naive(x, spec));
      worst = std::max(worst, err);
      v1.require(err <= 1e-10, spec.to_string() + " err " + fmt("%.3g", err));
      trees.push_back(tree);
      ++cases;
    }
  }
  const double elapsed = seconds_since(start);
  v1.require(elapsed < 10.0, "runtime " + fmt("%.2f s", elapsed));
  report(1, "oracle equivalence 2D", v1,
         std::to_string(cases) + " cases, max_err=" + fmt("%.3g", worst) + ", " + fmt("%.2f s", elapsed));

  std::size_t k = 0;
  for (const NdArray& x : corpus) {
    for (const WindowSpec& spec : shapes) {
      const bool same = bitwise_equal(trees[k++], oracle::swfft_2d(x, spec));
      exact += same;
      v2.require(same, spec.to_string() + " differs from the per-window FFT");
    }
  }
  report(2, "bitwise FFT equivalence", v2, std::to_string(exact) + "/" + std::to_string(cases) + " bit-identical");
}

void criterion_3() {
  Verdict v;
  const std::size_t N0 = 40, N1 = 36;
  std::mt19937_64 rng(3);
  const NdArray x = testing::random_complex({N0, N1}, rng);
  std::uint64_t at4 = 0, at32 = 0;
  std::size_t runs = 0;
  for (unsigned m0 = 1; m0 <= 5; ++m0) {
    for (unsigned m1 = 1; m1 <= 5; ++m1) {
      const WindowSpec spec({m0, m1});
      const std::size_t n0 = spec.size(0), n1 = spec.size(1);
      OpCounter ops;
      ops.track_positions(x.size());
      TransformOptions options;
      options.ops = &ops;
      (void)tree_swdft_2d(x, spec, options);
      const std::uint64_t want = 2 * (n0 * n1 - 1);
      for (std::size_t p0 = n0 - 1; p0 < N0; ++p0) {
        for (std::size_t p1 = n1 - 1; p1 < N1; ++p1) {
          const std::uint64_t got = ops.per_position()[p0 * N1 + p1];
          v.require(got == want, spec.to_string() + " window op count " + std::to_string(got));
        }
      }
      if (n0 == 4 && n1 == 4) at4 = ops.per_position()[(N0 - 1) * N1 + N1 - 1];
      if (n0 == 32 && n1 == 32) at32 = ops.per_position()[(N0 - 1) * N1 + N1 - 1];
      const std::uint64_t predicted = bench::predict_ops(bench::Algorithm::tree, N0, N1, n0, n1);
      v.require(ops.total() == predicted, spec.to_string() + " total " + std::to_string(ops.total()) +
                                              " != predicted " + std::to_string(predicted));
      ++runs;
    }
  }
  v.require(at4 == 30, "4x4 per window " + std::to_string(at4));
  v.require(at32 == 2046, "32x32 per window " + std::to_string(at32));
  report(3, "exact op count", v,
         std::to_string(runs) + " window shapes; 4x4 -> " + std::to_string(at4) + ", 32x32 -> " + std::to_string(at32) +
             "; totals equal predict_ops");
}

void criterion_4() {
  Verdict v;
  const auto start = Clock::now();
  const NdArray x = bench::random_array({100, 100}, 1);
  const std::size_t windows[] = {4, 8, 16, 32, 64};
  std::vector<double> volume, tree_times;
  std::string summary;
  for (std::size_t n : windows) {
    const std::size_t sizes[] = {n, n};
    const WindowSpec spec = WindowSpec::from_sizes(sizes);
    const double t_tree = bench::time_median([&] { (void)tree_swdft_2d(x, spec); }, 3);
    const double t_fft = bench::time_median([&] { (void)oracle::swfft_2d(x, spec); }, 3);
    volume.push_back(double(n * n));
    tree_times.push_back(t_tree);
    summary += std::to_string(n) + ":" + fmt("%.3g", t_tree) + "/" + fmt("%.3g", t_fft) + " ";
    if (n >= 16) v.require(t_tree < t_fft, "n=" + std::to_string(n) + " tree not faster than swfft");
  }
  const double slope = bench::loglog_slope(volume, tree_times);
  v.require(slope >= 0.8 && slope <= 1.3, "slope " + fmt("%.3f", slope));
  const double elapsed = seconds_since(start);
  v.require(elapsed < 300.0, "runtime " + fmt("%.1f s", elapsed));
  report(4, "complexity trend", v,
         "tree/swfft s per n: " + summary + "slope=" + fmt("%.3f", slope) + ", " + fmt("%.1f s", elapsed));
}

void criterion_5() {
  Verdict v;
  const std::vector<std::size_t> big = {431, 431};
  const std::uint64_t bytes = estimate_output_memory(big, WindowSpec({5, 5})).output_bytes();
  v.require(bytes == 2621440000ull, "output bytes " + std::to_string(bytes));
  struct Case {
    std::vector<std::size_t> dims;
    std::vector<unsigned> exps;
  };
  for (const Case& c : std::vector<Case>{{{9, 7}, {2, 1}}, {{16, 16}, {3, 3}}, {{12, 20}, {1, 4}}, {{5, 5}, {0, 0}}}) {
    MemoryTracker memory;
    TransformOptions options;
    options.memory = &memory;
    (void)tree_swdft_2d(NdArray(c.dims), WindowSpec(c.exps), options);
    const std::uint64_t want = 2ull * c.dims[0] * c.dims[1] * (1u << c.exps[0]) * (1u << c.exps[1]);
    v.require(memory.level_buffer_elements() == want,
              "level buffers " + std::to_string(memory.level_buffer_elements()) + " != " + std::to_string(want));
  }
  report(5, "memory accounting", v, "431x431 with 32x32 -> " + std::to_string(bytes) + " output bytes");
}

void criterion_6() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(6);
  double worst = 0.0;
  struct Case {
    std::vector<std::size_t> dims;
    std::vector<unsigned> exps;
  };
  for (const Case& c : std::vector<Case>{{{6, 6, 6}, {1, 1, 1}}, {{6, 6, 6}, {2, 1, 1}}, {{4, 4, 4, 4}, {1, 1, 1, 1}}}) {
    const NdArray x = testing::random_complex(c.dims, rng);
    const WindowSpec spec(c.exps);
    const double err = max_abs_diff(tree_swdft_kd(x, spec), oracle::swdft_kd_naive(x, spec));
    worst = std::max(worst, err);
    v.require(err <= 1e-10, spec.to_string() + " err " + fmt("%.3g", err));
  }
  const NdArray signal = testing::random_complex({64}, rng);
  for (unsigned m = 0; m <= 5; ++m) {
    const WindowSpec spec({m});
    v.require(bitwise_equal(tree_swdft_kd(signal, spec), tree_swdft_1d(signal, spec)),
              "rank 1 " + spec.to_string() + " differs");
  }
  const NdArray image = testing::random_complex({16, 16}, rng);
  for (const WindowSpec& spec : all_shapes()) {
    v.require(bitwise_equal(tree_swdft_kd(image, spec), tree_swdft_2d(image, spec)),
              "rank 2 " + spec.to_string() + " differs");
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "runtime " + fmt("%.2f s", elapsed));
  report(6, "kD correctness", v, "max_err=" + fmt("%.3g", worst) + ", rank 1/2 bit-identical, " + fmt("%.2f s", elapsed));
}

void criterion_7() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::size_t emissions = 0;
  for (unsigned m = 0; m <= 5; ++m) {
    const WindowSpec spec({m});
    const std::size_t n = spec.size(0);
    const NdArray x = testing::random_complex({80}, rng);
    const auto batch = tree_swdft_1d(x, spec);
    TreeStream1D stream(spec);
    for (std::size_t p = 0; p < 80; ++p) {
      const std::uint64_t before = stream.ops().total();
      const auto out = stream.push(x.data()[p]);
      if (p + 1 < n) {
        v.require(!out, "1D early emission");
        continue;
      }
      v.require(out.has_value(), "1D missing emission");
      if (!out) continue;
      v.require(bitwise_equal(*out, batch.window_at(p - (n - 1))), "1D emission differs at p=" + std::to_string(p));
      v.require(stream.ops().total() - before == 2 * (n - 1), "1D emission cost at p=" + std::to_string(p));
      ++emissions;
    }
  }
  for (const auto& exps : std::vector<std::vector<unsigned>>{{1, 1}, {2, 2}, {3, 2}, {1, 3}, {3, 3}}) {
    const WindowSpec spec(exps);
    const std::size_t n0 = spec.size(0), n1 = spec.size(1), N1 = 14;
    const NdArray x = testing::random_complex({12, N1}, rng);
    const auto batch = tree_swdft_2d(x, spec);
    const std::size_t P1 = batch.positions()[1];
    TreeStream2D stream(N1, spec);
    for (std::size_t r = 0; r < 12; ++r) {
      const auto slab = stream.push_row(x.data().subspan(r * N1, N1));
      if (r + 1 < n0) {
        v.require(!slab, "2D early emission");
        continue;
      }
      v.require(slab.has_value(), "2D missing emission");
      if (!slab) continue;
      const std::size_t q0 = r - (n0 - 1);
      v.require(bitwise_equal(slab->data(), batch.values().data().subspan(q0 * P1 * n0 * n1, P1 * n0 * n1)),
                "2D row emission differs at row " + std::to_string(r));
      for (std::size_t p1 = n1 - 1; p1 < N1; ++p1) {
        v.require(stream.last_row_ops()[p1] == 2 * (n0 * n1 - 1), "2D emission cost at row " + std::to_string(r));
      }
      emissions += P1;
    }
  }
  report(7, "streaming equivalence", v, std::to_string(emissions) + " windows emitted bit-identical at the stated cost");
}

void criterion_8() {
  Verdict v;
  std::mt19937_64 rng(8);
  double parseval = 0.0, linear = 0.0, transpose = 0.0, permute = 0.0;
  std::size_t loop_cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> extent(8, 16);
    std::uniform_int_distribution<unsigned> exponent(0, 3);
    const std::size_t N0 = extent(rng), N1 = extent(rng);
    const WindowSpec spec({exponent(rng), exponent(rng)});
    const std::size_t n0 = spec.size(0), n1 = spec.size(1);
    const NdArray x = testing::random_complex({N0, N1}, rng);
    const NdArray y = testing::random_complex({N0, N1}, rng);
    const auto tx = tree_swdft_2d(x, spec);

    // Parseval per window, unnormalized.
    for (std::size_t q = 0; q < tx.position_count(); ++q) {
      const std::size_t q0 = q / tx.positions()[1], q1 = q % tx.positions()[1];
      double energy = 0.0, spectrum = 0.0;
      for (std::size_t j0 = 0; j0 < n0; ++j0) {
        for (std::size_t j1 = 0; j1 < n1; ++j1) energy += std::norm(x.at({q0 + j0, q1 + j1}));
      }
      for (const auto& a : tx.window_at(q)) spectrum += std::norm(a);
      parseval = std::max(parseval, std::abs(spectrum - double(n0 * n1) * energy) / (double(n0 * n1) * energy));
    }

    // Linearity.
    const ComplexSample alpha(0.7, -1.3), beta(-2.1, 0.4);
    NdArray mix({N0, N1});
    for (std::size_t i = 0; i < x.size(); ++i) mix.data()[i] = alpha * x.data()[i] + beta * y.data()[i];
    const auto tmix = tree_swdft_2d(mix, spec);
    const auto ty = tree_swdft_2d(y, spec);
    for (std::size_t i = 0; i < tmix.values().size(); ++i) {
      const ComplexSample want = alpha * tx.values().data()[i] + beta * ty.values().data()[i];
      linear = std::max(linear, std::abs(tmix.values().data()[i] - want));
    }

    // Transpose symmetry.
    NdArray xt({N1, N0});
    for (std::size_t r = 0; r < N0; ++r) {
      for (std::size_t c = 0; c < N1; ++c) xt.at({c, r}) = x.at({r, c});
    }
    const auto tt = tree_swdft_2d(xt, WindowSpec({spec.exponent(1), spec.exponent(0)}));
    for (std::size_t q0 = 0; q0 < tx.positions()[0]; ++q0) {
      for (std::size_t q1 = 0; q1 < tx.positions()[1]; ++q1) {
        for (std::size_t k0 = 0; k0 < n0; ++k0) {
          for (std::size_t k1 = 0; k1 < n1; ++k1) {
            const std::size_t a[] = {q0, q1}, ka[] = {k0, k1}, b[] = {q1, q0}, kb[] = {k1, k0};
            transpose = std::max(transpose, std::abs(tx.at(a, ka) - tt.at(b, kb)));
          }
        }
      }
    }

    // Loop-order bitwise invariance.
    TransformOptions trees_outer;
    trees_outer.loop_order = LoopOrder::trees_outer;
    v.require(bitwise_equal(tx, tree_swdft_2d(x, spec, trees_outer)), "2D loop order changes bits");
    const NdArray s = testing::random_complex({N0 * N1}, rng);
    const WindowSpec spec1({spec.exponent(0) + spec.exponent(1)});
    v.require(bitwise_equal(tree_swdft_1d(s, spec1), tree_swdft_1d(s, spec1, trees_outer)), "1D loop order changes bits");
    loop_cases += 2;
  }

  // Axis-permutation equivariance in 3D.
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<std::size_t> dims = {6, 7, 5};
    const std::vector<unsigned> exps = {1, 2, unsigned(trial % 3)};
    const std::vector<std::size_t> perm = {2, 0, 1};  // new axis d is old axis perm[d]
    const NdArray x = testing::random_complex(dims, rng);
    NdArray xp({dims[perm[0]], dims[perm[1]], dims[perm[2]]});
    std::vector<std::size_t> idx(3, 0), moved(3);
    const std::vector<std::size_t> zero(3, 0);
    do {
      for (std::size_t d = 0; d < 3; ++d) moved[d] = idx[perm[d]];
      xp.at(moved) = x.at(idx);
    } while (next_index(idx, zero, dims));
    const auto c = tree_swdft_kd(x, WindowSpec(exps));
    const auto t = tree_swdft_kd(xp, WindowSpec({exps[perm[0]], exps[perm[1]], exps[perm[2]]}));
    const std::vector<std::size_t> sizes = {std::size_t{1} << exps[0], std::size_t{1} << exps[1], std::size_t{1} << exps[2]};
    std::vector<std::size_t> q(3, 0), k(3), qp(3), kp(3);
    do {
      std::fill(k.begin(), k.end(), 0);
      do {
        for (std::size_t d = 0; d < 3; ++d) {
          qp[d] = q[perm[d]];
          kp[d] = k[perm[d]];
        }
        permute = std::max(permute, std::abs(c.at(q, k) - t.at(qp, kp)));
      } while (next_index(k, zero, sizes));
    } while (next_index(q, zero, c.positions()));
  }

  v.require(parseval <= 1e-9, "Parseval " + fmt("%.3g", parseval));
  v.require(linear <= 1e-10, "linearity " + fmt("%.3g", linear));
  v.require(transpose <= 1e-10, "transpose " + fmt("%.3g", transpose));
  v.require(permute <= 1e-10, "permutation " + fmt("%.3g", permute));
  report(8, "property suite", v,
         "parseval_rel=" + fmt("%.3g", parseval) + " linearity=" + fmt("%.3g", linear) + " transpose=" +
             fmt("%.3g", transpose) + " permutation=" + fmt("%.3g", permute) + " loop_order_cases=" +
             std::to_string(loop_cases));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {criteria_1_and_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7, criterion_8};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      std::printf("FAIL  unexpected exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures;
}
