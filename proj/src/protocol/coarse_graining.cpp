#include "thermocone/protocol/coarse_graining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace thermocone::protocol {

namespace {

constexpr double kQuantum = 1099511627776.0;  // 2^40

struct HeapEntry {
  std::int64_t key;
  std::size_t index;
};

// Max-heap on key, then min on index.
struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.index > b.index;
  }
};

std::int64_t quantize(double deficit) {
  return static_cast<std::int64_t>(std::floor(deficit * kQuantum));
}

}  // namespace

GreedyResult greedy_coarse_grain(std::span<const AtomGroup> groups,
                                 std::span<const double> targets) {
  if (targets.empty()) throw ValidationError("empty", "coarse-graining needs at least one target");
  GreedyResult out;
  out.covered.assign(targets.size(), 0.0);
  out.fiber_sizes.assign(targets.size(), 0);

  std::vector<double> deficit(targets.begin(), targets.end());
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  for (std::size_t y = 0; y < deficit.size(); ++y) heap.push({quantize(deficit[y]), y});

  auto allocate = [&](std::size_t g, std::size_t y, std::uint64_t count) {
    if (!out.allocations.empty() && out.allocations.back().group == g &&
        out.allocations.back().target == y)
      out.allocations.back().count += count;
    else
      out.allocations.push_back({g, y, count});
  };

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double w = groups[g].weight;
    if (!(w >= 0.0) || !std::isfinite(w))
      throw ValidationError("probability", "atom weights must be finite and nonnegative");
    std::uint64_t remaining = groups[g].count;
    while (remaining > 0) {
      const HeapEntry top = heap.top();
      heap.pop();
      const std::size_t y = top.index;
      std::uint64_t take = remaining;
      if (!heap.empty() && w > 0.0) {
        const double runner_up = static_cast<double>(heap.top().key) / kQuantum;
        const double gap = std::max(0.0, deficit[y] - runner_up);
        const double fits = std::floor(gap / w) + 1.0;
        if (fits < static_cast<double>(remaining)) take = static_cast<std::uint64_t>(fits);
      }
      const double mass = static_cast<double>(take) * w;
      deficit[y] -= mass;
      out.covered[y] += mass;
      if (w > 0.0) out.fiber_sizes[y] += take;
      allocate(g, y, take);
      remaining -= take;
      heap.push({quantize(deficit[y]), y});
    }
  }
  return out;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::max(0.0, a[i] - b[i]);
  return d;
}

CoarseGrainReport build_coarse_graining(const Distribution& p, const Distribution& q) {
  validate(p);
  validate(q);
  for (std::size_t y = 0; y < q.size(); ++y) {
    if (!(q[y] > 0.0)) {
      std::ostringstream os;
      os << "target probability " << y << " is zero; restrict q to its support first";
      throw ValidationError("target_support", os.str());
    }
  }

  // Heaviest atoms first; equal weights keep their input order.
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::vector<AtomGroup> atoms;
  atoms.reserve(p.size());
  for (std::size_t i : order) atoms.push_back({p[i], 1});
  const auto g = greedy_coarse_grain(atoms, q.probabilities);

  CoarseGrainReport r;
  r.map.assignment.resize(p.size());
  for (const auto& a : g.allocations) r.map.assignment[order[a.group]] = a.target;
  r.map.fiber_sizes.assign(g.fiber_sizes.begin(), g.fiber_sizes.end());
  r.map.pushforward.probabilities = g.covered;

  const auto rp = renyi(p);
  const auto rq = renyi(q);
  r.distance = total_variation(g.covered, q.probabilities);
  r.l1_bound = std::exp2(rq.h_0 - rp.h_inf);
  r.fiber_bound = std::exp2(rp.h_neg_inf) * (std::exp2(-rq.h_inf) + std::exp2(-rp.h_inf));
  r.max_fiber = *std::max_element(r.map.fiber_sizes.begin(), r.map.fiber_sizes.end());
  r.l1_holds = r.distance <= r.l1_bound + 1e-12;
  r.fiber_holds = static_cast<double>(r.max_fiber) <= r.fiber_bound * (1.0 + 1e-12);
  return r;
}

}  // namespace thermocone::protocol
