#include "swdft/tree2d.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swdft {
namespace {

void require_2d(const NdArray& x, const WindowSpec& spec) {
  if (x.rank() != 2 || spec.rank() != 2) throw ShapeError("2D tree transform expects a 2D array");
  spec.check_fits(x.dims());
}

// Completes every valid level of one tree whose slot stores level l at
// [2^l - 1, 2^{l+1} - 1). `slot_at(q0, q1)` yields the slot of an earlier tree.
struct TreeKernel2D {
  std::size_t m0, m1, n0, n1;
  const TwiddleVector& tw0;
  const TwiddleVector& tw1;

  template <typename SlotAt>
  std::uint64_t complete(ComplexSample* own, std::size_t p0, std::size_t p1, SlotAt&& slot_at) const {
    std::uint64_t ops = 0;
    for (std::size_t l = 1; l <= m0 + m1; ++l) {
      const std::size_t count = std::size_t{1} << l;
      const std::size_t half = count >> 1;
      const std::size_t mask = half - 1;
      const ComplexSample* src_own = own + (half - 1);
      ComplexSample* dst = own + (count - 1);
      if (l <= m1) {
        const std::size_t s = n1 >> l;
        if (p1 < n1 - s) break;
        const ComplexSample* src_shifted = slot_at(p0, p1 - s) + (half - 1);
        for (std::size_t i = 0; i < count; ++i) {
          dst[i] = butterfly(src_shifted[i & mask], tw1[i * s], src_own[i & mask]);
        }
      } else {
        const std::size_t s = std::size_t{1} << (m0 + m1 - l);
        if (p1 < n1 - 1 || p0 < n0 - s) break;
        const ComplexSample* src_shifted = slot_at(p0 - s, p1) + (half - 1);
        for (std::size_t i = 0; i < count; ++i) {
          dst[i] = butterfly(src_shifted[i & mask], tw0[(i >> m1) * s], src_own[i & mask]);
        }
      }
      ops += count;
    }
    return ops;
  }
};

CoefficientArray tree_2d_trees_outer(const NdArray& x, const WindowSpec& spec,
                                     const TransformOptions& options) {
  const std::size_t N0 = x.extent(0);
  const std::size_t N1 = x.extent(1);
  const std::size_t n0 = spec.size(0);
  const std::size_t n1 = spec.size(1);
  const std::size_t volume = spec.volume();
  const std::size_t slot = 2 * volume - 1;

  MemoryEstimate memory = estimate_output_memory(x.dims(), spec);
  memory.level_buffer_elements = saturating_mul(saturating_mul(N0, N1), slot);
  check_budget(memory.total_bytes(), options.memory_budget);
  if (options.memory) options.memory->acquire(memory.total_bytes());

  const TwiddleVector tw0(n0);
  const TwiddleVector tw1(n1);
  const TreeKernel2D kernel{spec.exponent(0), spec.exponent(1), n0, n1, tw0, tw1};
  std::vector<ComplexSample> store(N0 * N1 * slot);
  auto slot_at = [&](std::size_t q0, std::size_t q1) { return store.data() + (q0 * N1 + q1) * slot; };

  OpCounter* ops = options.ops;
  if (ops && ops->tracking_positions() && ops->per_position().size() != N0 * N1) {
    ops->track_positions(N0 * N1);
  }
  for (std::size_t p0 = 0; p0 < N0; ++p0) {
    for (std::size_t p1 = 0; p1 < N1; ++p1) {
      ComplexSample* own = slot_at(p0, p1);
      own[0] = x[p0 * N1 + p1];
      const std::uint64_t spent = kernel.complete(own, p0, p1, slot_at);
      if (ops) ops->add_at(p0 * N1 + p1, spent);
    }
  }

  CoefficientArray out(x.dims(), spec.with_normalization(Normalization::none));
  const std::size_t P1 = out.positions()[1];
  for (std::size_t q = 0; q < out.position_count(); ++q) {
    const ComplexSample* src = slot_at(q / P1 + n0 - 1, q % P1 + n1 - 1) + (volume - 1);
    std::copy(src, src + volume, out.window_at(q).begin());
  }
  if (options.memory) options.memory->release(memory.total_bytes());
  return normalize(std::move(out), spec.normalization());
}

}  // namespace

TreeLattice2D::TreeLattice2D(const NdArray& x, const WindowSpec& spec, const TransformOptions& options)
    : dims_((require_2d(x, spec), x.dims())),
      spec_(spec),
      options_(options),
      N0_(x.extent(0)),
      N1_(x.extent(1)),
      m0_(spec.exponent(0)),
      m1_(spec.exponent(1)),
      n0_(spec.size(0)),
      n1_(spec.size(1)),
      volume_(spec.volume()),
      tw0_(n0_),
      tw1_(n1_) {
  const MemoryEstimate memory = estimate_tree_memory(dims_, spec_);
  check_budget(memory.total_bytes(), options_.memory_budget);
  prev_ = LevelBuffer(N0_ * N1_ * volume_);
  cur_ = LevelBuffer(N0_ * N1_ * volume_);
  tracked_bytes_ = memory.level_buffer_bytes();
  if (options_.memory) {
    options_.memory->acquire(tracked_bytes_);
    options_.memory->record_level_buffers(memory.level_buffer_elements);
  }
  if (options_.ops && options_.ops->tracking_positions() &&
      options_.ops->per_position().size() != N0_ * N1_) {
    options_.ops->track_positions(N0_ * N1_);
  }
  for (std::size_t p = 0; p < N0_ * N1_; ++p) cur_[p * volume_] = x[p];
}

TreeLattice2D::~TreeLattice2D() {
  if (options_.memory) options_.memory->release(tracked_bytes_);
}

void TreeLattice2D::add_ops(std::size_t first0, std::size_t first1, std::size_t nodes) {
  OpCounter* ops = options_.ops;
  if (!ops) return;
  if (!ops->tracking_positions()) {
    ops->add(static_cast<std::uint64_t>(N0_ - first0) * (N1_ - first1) * nodes);
    return;
  }
  for (std::size_t p0 = first0; p0 < N0_; ++p0) {
    for (std::size_t p1 = first1; p1 < N1_; ++p1) ops->add_at(p0 * N1_ + p1, nodes);
  }
}

void TreeLattice2D::row_level_step(std::size_t t) {
  if (t != level_ + 1 || t > m1_) {
    throw StateError("row level " + std::to_string(t) + " requested with lattice at level " +
                     std::to_string(level_));
  }
  std::swap(prev_, cur_);
  const std::size_t V = volume_;
  const std::size_t s = n1_ >> t;
  const std::size_t count = std::size_t{1} << t;
  const std::size_t mask = (count >> 1) - 1;
  const std::size_t first1 = n1_ - s;
  const auto rows = static_cast<std::ptrdiff_t>(N0_);
  const ComplexSample* prev = prev_.data();
  ComplexSample* cur = cur_.data();

#pragma omp parallel for num_threads(options_.threads) if (options_.threads > 1) schedule(static)
  for (std::ptrdiff_t p0 = 0; p0 < rows; ++p0) {
    for (std::size_t p1 = first1; p1 < N1_; ++p1) {
      const std::size_t base = (static_cast<std::size_t>(p0) * N1_ + p1) * V;
      const ComplexSample* own = prev + base;
      const ComplexSample* shifted = own - s * V;
      ComplexSample* dst = cur + base;
      for (std::size_t i1 = 0; i1 < count; ++i1) {
        dst[i1] = butterfly(shifted[i1 & mask], tw1_[i1 * s], own[i1 & mask]);
      }
    }
  }
  level_ = t;
  add_ops(0, first1, count);
}

void TreeLattice2D::col_level_step(std::size_t v) {
  if (v != level_ + 1 || v <= m1_ || v > m0_ + m1_) {
    throw StateError("column level " + std::to_string(v) + " requested with lattice at level " +
                     std::to_string(level_));
  }
  std::swap(prev_, cur_);
  const std::size_t V = volume_;
  const std::size_t s = std::size_t{1} << (m0_ + m1_ - v);
  const std::size_t rows_here = std::size_t{1} << (v - m1_);
  const std::size_t mask0 = (rows_here >> 1) - 1;
  const std::size_t first0 = n0_ - s;
  const std::size_t first1 = n1_ - 1;
  const std::size_t shift_offset = s * N1_ * V;
  const auto rows = static_cast<std::ptrdiff_t>(N0_);
  const ComplexSample* prev = prev_.data();
  ComplexSample* cur = cur_.data();

#pragma omp parallel for num_threads(options_.threads) if (options_.threads > 1) schedule(static)
  for (auto p0 = static_cast<std::ptrdiff_t>(first0); p0 < rows; ++p0) {
    for (std::size_t p1 = first1; p1 < N1_; ++p1) {
      const std::size_t base = (static_cast<std::size_t>(p0) * N1_ + p1) * V;
      const ComplexSample* own = prev + base;
      const ComplexSample* shifted = own - shift_offset;
      ComplexSample* dst = cur + base;
      for (std::size_t i0 = 0; i0 < rows_here; ++i0) {
        const std::size_t src = (i0 & mask0) * n1_;
        const ComplexSample w = tw0_[i0 * s];
        ComplexSample* out = dst + i0 * n1_;
        for (std::size_t i1 = 0; i1 < n1_; ++i1) {
          out[i1] = butterfly(shifted[src + i1], w, own[src + i1]);
        }
      }
    }
  }
  level_ = v;
  add_ops(first0, first1, rows_here * n1_);
}

void TreeLattice2D::step() {
  const std::size_t next = level_ + 1;
  if (next > final_level()) throw StateError("lattice already at the final level");
  if (next <= m1_) {
    row_level_step(next);
  } else {
    col_level_step(next);
  }
}

void TreeLattice2D::run() {
  while (level_ < final_level()) step();
}

bool TreeLattice2D::is_valid(std::size_t p0, std::size_t p1) const noexcept {
  if (p0 >= N0_ || p1 >= N1_) return false;
  if (level_ == 0) return true;
  if (level_ <= m1_) return p1 >= n1_ - (n1_ >> level_);
  return p1 >= n1_ - 1 && p0 >= n0_ - (std::size_t{1} << (m0_ + m1_ - level_));
}

const ComplexSample& TreeLattice2D::node(std::size_t p0, std::size_t p1, std::size_t i0,
                                         std::size_t i1) const {
  if (!is_valid(p0, p1)) {
    throw std::logic_error("tree (" + std::to_string(p0) + ", " + std::to_string(p1) +
                           ") has no level " + std::to_string(level_));
  }
  const std::size_t e0 = level_ <= m1_ ? 1 : std::size_t{1} << (level_ - m1_);
  const std::size_t e1 = level_ <= m1_ ? std::size_t{1} << level_ : n1_;
  if (i0 >= e0 || i1 >= e1) throw std::logic_error("node index outside the level's extents");
  return cur_[(p0 * N1_ + p1) * volume_ + i0 * e1 + i1];
}

CoefficientArray TreeLattice2D::extract() const {
  if (level_ != final_level()) throw StateError("lattice has not reached the final level");
  CoefficientArray out(dims_, spec_.with_normalization(Normalization::none));
  const std::size_t P1 = out.positions()[1];
  for (std::size_t q = 0; q < out.position_count(); ++q) {
    const std::size_t p0 = q / P1 + n0_ - 1;
    const std::size_t p1 = q % P1 + n1_ - 1;
    const ComplexSample* src = cur_.data() + (p0 * N1_ + p1) * volume_;
    std::copy(src, src + volume_, out.window_at(q).begin());
  }
  return out;
}

CoefficientArray tree_swdft_2d(const NdArray& x, const WindowSpec& spec, const TransformOptions& options) {
  require_2d(x, spec);
  if (options.loop_order == LoopOrder::trees_outer) return tree_2d_trees_outer(x, spec, options);

  TreeLattice2D lattice(x, spec, options);
  lattice.run();
  const std::uint64_t output_bytes = estimate_output_memory(x.dims(), spec).output_bytes();
  if (options.memory) options.memory->acquire(output_bytes);
  CoefficientArray out = lattice.extract();
  if (options.memory) options.memory->release(output_bytes);
  return normalize(std::move(out), spec.normalization());
}

TreeStream2D::TreeStream2D(std::size_t columns, const WindowSpec& spec)
    : spec_(spec),
      N1_(columns),
      m0_(spec.rank() == 2 ? spec.exponent(0) : 0),
      m1_(spec.rank() == 2 ? spec.exponent(1) : 0),
      n0_(std::size_t{1} << m0_),
      n1_(std::size_t{1} << m1_),
      slot_(2 * (n0_ * n1_) - 1),
      scale_(normalization_scale(spec.normalization(), spec)),
      tw0_(n0_),
      tw1_(n1_) {
  if (spec.rank() != 2) throw ShapeError("TreeStream2D expects a 2D window");
  if (n1_ > N1_) {
    throw WindowTooLargeError("window extent " + std::to_string(n1_) + " exceeds row length " +
                              std::to_string(N1_));
  }
  band_.resize(n0_ * N1_ * slot_);
  last_row_ops_.assign(N1_, 0);
}

std::optional<NdArray> TreeStream2D::push_row(std::span<const ComplexSample> row) {
  if (closed_) throw StateError("push after close");
  if (row.size() != N1_) {
    throw ShapeError("row has " + std::to_string(row.size()) + " samples, expected " +
                     std::to_string(N1_));
  }
  const std::size_t p0 = rows_++;
  const TreeKernel2D kernel{m0_, m1_, n0_, n1_, tw0_, tw1_};
  auto slot_at = [this](std::size_t q0, std::size_t q1) {
    return band_.data() + ((q0 & (n0_ - 1)) * N1_ + q1) * slot_;
  };
  for (std::size_t p1 = 0; p1 < N1_; ++p1) {
    ComplexSample* own = slot_at(p0, p1);
    own[0] = row[p1];
    last_row_ops_[p1] = kernel.complete(own, p0, p1, slot_at);
    ops_.add(last_row_ops_[p1]);
  }

  if (p0 + 1 < n0_) return std::nullopt;
  const std::size_t volume = n0_ * n1_;
  const std::size_t P1 = N1_ - n1_ + 1;
  NdArray slab({P1, n0_, n1_});
  for (std::size_t q1 = 0; q1 < P1; ++q1) {
    const ComplexSample* src = slot_at(p0, q1 + n1_ - 1) + (volume - 1);
    std::copy(src, src + volume, slab.data().begin() + static_cast<std::ptrdiff_t>(q1 * volume));
  }
  if (spec_.normalization() != Normalization::none) {
    for (ComplexSample& v : slab.data()) v *= scale_;
  }
  return slab;
}

}  // namespace swdft
