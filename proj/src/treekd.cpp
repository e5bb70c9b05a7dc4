#include "swdft/treekd.hpp"

#include <algorithm>
#include <string>

namespace swdft {

LevelPlan build_level_plan(const WindowSpec& spec) {
  LevelPlan plan{spec, {}};
  for (std::size_t l = 1; l <= spec.total_levels(); ++l) {
    LevelPlanEntry entry;
    entry.geometry = level_geometry(l, spec);
    entry.modulus_exponent = l - 1 - entry.geometry.inner_bits;
    plan.levels.push_back(std::move(entry));
  }
  return plan;
}

TreeLatticeKD::TreeLatticeKD(const NdArray& x, const WindowSpec& spec, const TransformOptions& options)
    : dims_(x.dims()),
      strides_(x.strides()),
      spec_(spec),
      options_(options),
      plan_(build_level_plan(spec)),
      trees_(x.size()),
      volume_(spec.volume()) {
  spec_.check_fits(dims_);
  const MemoryEstimate memory = estimate_tree_memory(dims_, spec_);
  check_budget(memory.total_bytes(), options_.memory_budget);
  for (std::size_t d = 0; d < spec_.rank(); ++d) twiddles_.emplace_back(spec_.size(d));
  prev_ = LevelBuffer(trees_ * volume_);
  cur_ = LevelBuffer(trees_ * volume_);
  tracked_bytes_ = memory.level_buffer_bytes();
  if (options_.memory) {
    options_.memory->acquire(tracked_bytes_);
    options_.memory->record_level_buffers(memory.level_buffer_elements);
  }
  if (options_.ops && options_.ops->tracking_positions() &&
      options_.ops->per_position().size() != trees_) {
    options_.ops->track_positions(trees_);
  }
  for (std::size_t p = 0; p < trees_; ++p) cur_[p * volume_] = x[p];
}

TreeLatticeKD::~TreeLatticeKD() {
  if (options_.memory) options_.memory->release(tracked_bytes_);
}

void TreeLatticeKD::kd_level_step(const LevelPlanEntry& entry) {
  const LevelGeometry& g = entry.geometry;
  if (g.level != level_ + 1 || g.level > final_level()) {
    throw StateError("level " + std::to_string(g.level) + " requested with lattice at level " +
                     std::to_string(level_));
  }
  std::swap(prev_, cur_);

  const std::size_t k = dims_.size();
  const std::size_t V = volume_;
  const std::size_t count = g.node_count();
  const std::size_t mask = (count >> 1) - 1;
  const std::size_t s = g.shift;
  const std::size_t inner_bits = g.inner_bits;
  const std::size_t shift_offset = s * strides_[g.dim] * V;
  const TwiddleVector& tw = twiddles_[g.dim];
  const ComplexSample* prev = prev_.data();
  ComplexSample* cur = cur_.data();

  // Position box [thresholds, dims); dimension 0 is split across workers.
  const std::vector<std::size_t>& lower = g.thresholds;
  const auto first0 = static_cast<std::ptrdiff_t>(lower[0]);
  const auto last0 = static_cast<std::ptrdiff_t>(dims_[0]);

#pragma omp parallel for num_threads(options_.threads) if (options_.threads > 1) schedule(static)
  for (std::ptrdiff_t p0 = first0; p0 < last0; ++p0) {
    std::vector<std::size_t> pos(lower);
    pos[0] = static_cast<std::size_t>(p0);
    do {
      std::size_t flat = 0;
      for (std::size_t d = 0; d < k; ++d) flat += pos[d] * strides_[d];
      const ComplexSample* own = prev + flat * V;
      const ComplexSample* shifted = own - shift_offset;
      ComplexSample* dst = cur + flat * V;
      for (std::size_t f = 0; f < count; ++f) {
        dst[f] = butterfly(shifted[f & mask], tw[(f >> inner_bits) * s], own[f & mask]);
      }
    } while (k > 1 && next_index(std::span(pos).subspan(1), std::span(lower).subspan(1),
                                 std::span(dims_).subspan(1)));
  }
  level_ = g.level;

  if (OpCounter* ops = options_.ops) {
    if (!ops->tracking_positions()) {
      std::uint64_t positions = 1;
      for (std::size_t d = 0; d < k; ++d) positions *= dims_[d] - lower[d];
      ops->add(positions * count);
    } else {
      std::vector<std::size_t> pos(lower);
      do {
        std::size_t flat = 0;
        for (std::size_t d = 0; d < k; ++d) flat += pos[d] * strides_[d];
        ops->add_at(flat, count);
      } while (next_index(pos, lower, dims_));
    }
  }
}

void TreeLatticeKD::run() {
  for (const LevelPlanEntry& entry : plan_.levels) kd_level_step(entry);
}

std::span<const ComplexSample> TreeLatticeKD::tree(std::size_t flat_position) const {
  return std::span<const ComplexSample>(cur_.data(), cur_.size()).subspan(flat_position * volume_,
                                                      std::size_t{1} << level_);
}

CoefficientArray TreeLatticeKD::extract() const {
  if (level_ != final_level()) throw StateError("lattice has not reached the final level");
  CoefficientArray out(dims_, spec_.with_normalization(Normalization::none));
  const std::size_t k = dims_.size();
  const std::vector<std::size_t> zeros(k, 0);
  std::vector<std::size_t> q(k, 0);
  std::size_t flat_q = 0;
  do {
    std::size_t flat = 0;
    for (std::size_t d = 0; d < k; ++d) flat += (q[d] + spec_.size(d) - 1) * strides_[d];
    const ComplexSample* src = cur_.data() + flat * volume_;
    std::copy(src, src + volume_, out.window_at(flat_q++).begin());
  } while (next_index(q, zeros, out.positions()));
  return out;
}

CoefficientArray tree_swdft_kd(const NdArray& x, const WindowSpec& spec, const TransformOptions& options) {
  TreeLatticeKD lattice(x, spec, options);
  lattice.run();
  const std::uint64_t output_bytes = estimate_output_memory(x.dims(), spec).output_bytes();
  if (options.memory) options.memory->acquire(output_bytes);
  CoefficientArray out = lattice.extract();
  if (options.memory) options.memory->release(output_bytes);
  return normalize(std::move(out), spec.normalization());
}

}  // namespace swdft
