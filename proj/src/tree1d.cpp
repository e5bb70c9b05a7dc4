#include "swdft/tree1d.hpp"

#include <algorithm>
#include <cassert>

namespace swdft {
namespace {

void prepare_position_tally(OpCounter* ops, std::size_t trees) {
  if (ops && ops->tracking_positions() && ops->per_position().size() != trees) {
    ops->track_positions(trees);
  }
}

CoefficientArray tree_1d_trees_outer(const NdArray& x, const WindowSpec& spec,
                                     const TransformOptions& options) {
  CoefficientArray out(x.dims(), spec.with_normalization(Normalization::none));
  TreeStream1D stream(spec.with_normalization(Normalization::none));
  const std::size_t n = spec.size(0);
  prepare_position_tally(options.ops, x.size());
  std::uint64_t before = 0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto coeffs = stream.push(x[p]);
    if (options.ops) {
      options.ops->add_at(p, stream.ops().total() - before);
      before = stream.ops().total();
    }
    if (coeffs) std::copy(coeffs->begin(), coeffs->end(), out.window_at(p - (n - 1)).begin());
  }
  return normalize(std::move(out), spec.normalization());
}

}  // namespace

CoefficientArray tree_swdft_1d(const NdArray& x, const WindowSpec& spec, const TransformOptions& options) {
  if (x.rank() != 1 || spec.rank() != 1) throw ShapeError("tree_swdft_1d expects a 1D signal");
  spec.check_fits(x.dims());
  const MemoryEstimate memory = estimate_tree_memory(x.dims(), spec);
  check_budget(memory.total_bytes(), options.memory_budget);
  if (options.loop_order == LoopOrder::trees_outer) return tree_1d_trees_outer(x, spec, options);

  const std::size_t N = x.size();
  const unsigned m = spec.exponent(0);
  const std::size_t n = spec.size(0);
  const TwiddleVector twiddles(n);

  if (options.memory) {
    options.memory->acquire(memory.total_bytes());
    options.memory->record_level_buffers(memory.level_buffer_elements);
  }
  std::vector<ComplexSample> prev(N * n);
  std::vector<ComplexSample> cur(N * n);
  for (std::size_t p = 0; p < N; ++p) prev[p * n] = x[p];

  OpCounter* ops = options.ops;
  prepare_position_tally(ops, N);

  for (unsigned l = 1; l <= m; ++l) {
    const std::size_t s = n >> l;
    const std::size_t count = std::size_t{1} << l;
    const std::size_t mask = (count >> 1) - 1;
    const std::size_t first = n - s;
    const auto last = static_cast<std::ptrdiff_t>(N);

#pragma omp parallel for num_threads(options.threads) if (options.threads > 1) schedule(static)
    for (auto p = static_cast<std::ptrdiff_t>(first); p < last; ++p) {
      const ComplexSample* own = prev.data() + static_cast<std::size_t>(p) * n;
      const ComplexSample* shifted = own - s * n;
      ComplexSample* dst = cur.data() + static_cast<std::size_t>(p) * n;
      for (std::size_t i = 0; i < count; ++i) {
        assert(i * s < n);
        dst[i] = butterfly(shifted[i & mask], twiddles[i * s], own[i & mask]);
      }
    }

    if (ops) {
      if (ops->tracking_positions()) {
        for (std::size_t p = first; p < N; ++p) ops->add_at(p, count);
      } else {
        ops->add((N - first) * count);
      }
    }
    std::swap(prev, cur);
  }

  CoefficientArray out(x.dims(), spec.with_normalization(Normalization::none));
  for (std::size_t q = 0; q < out.position_count(); ++q) {
    const ComplexSample* src = prev.data() + (q + n - 1) * n;
    std::copy(src, src + n, out.window_at(q).begin());
  }
  if (options.memory) options.memory->release(memory.total_bytes());
  return normalize(std::move(out), spec.normalization());
}

TreeStream1D::TreeStream1D(const WindowSpec& spec)
    : spec_(spec),
      n_(spec.rank() == 1 ? spec.size(0) : 0),
      m_(spec.rank() == 1 ? spec.exponent(0) : 0),
      slot_(2 * n_ - 1),
      scale_(normalization_scale(spec.normalization(), spec)),
      twiddles_(spec.rank() == 1 ? spec.size(0) : 1),
      ring_(n_ * slot_) {
  if (spec.rank() != 1) throw ShapeError("TreeStream1D expects a 1D window");
}

ComplexSample* TreeStream1D::tree(std::size_t position) noexcept {
  return ring_.data() + (position & (n_ - 1)) * slot_;
}

std::optional<std::vector<ComplexSample>> TreeStream1D::push(ComplexSample sample) {
  if (closed_) throw StateError("push after close");
  const std::size_t p = pushed_++;
  ComplexSample* own = tree(p);
  own[0] = sample;  // level l occupies [2^l - 1, 2^{l+1} - 1)

  for (unsigned l = 1; l <= m_; ++l) {
    const std::size_t s = n_ >> l;
    if (p < n_ - s) break;
    const std::size_t count = std::size_t{1} << l;
    const std::size_t half = count >> 1;
    const ComplexSample* src_own = own + (half - 1);
    const ComplexSample* src_shifted = tree(p - s) + (half - 1);
    ComplexSample* dst = own + (count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      dst[i] = butterfly(src_shifted[i & (half - 1)], twiddles_[i * s], src_own[i & (half - 1)]);
    }
    ops_.add(count);
  }

  if (p + 1 < n_) return std::nullopt;
  const ComplexSample* final_level = own + (n_ - 1);
  std::vector<ComplexSample> coeffs(final_level, final_level + n_);
  if (spec_.normalization() != Normalization::none) {
    for (ComplexSample& v : coeffs) v *= scale_;
  }
  return coeffs;
}

}  // namespace swdft
