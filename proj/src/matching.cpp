#include "hapmatch/matching.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "hapmatch/errors.hpp"

namespace hapmatch {

Matching::Matching(std::size_t n_haps, std::size_t m_uavs) : assignment_(m_uavs), loads_(n_haps, 0) {}

void Matching::assign(UavId u, HapId h) {
  if (h >= loads_.size()) throw ContractViolation("Matching::assign: HAP id out of range");
  unassign(u);
  assignment_.at(u) = h;
  ++loads_[h];
  ++size_;
}

void Matching::unassign(UavId u) {
  auto& slot = assignment_.at(u);
  if (slot) {
    --loads_[*slot];
    --size_;
    slot.reset();
  }
}

std::vector<UavId> Matching::uavs_of(HapId h) const {
  std::vector<UavId> out;
  for (UavId u = 0; u < assignment_.size(); ++u) {
    if (assignment_[u] == h) out.push_back(u);
  }
  return out;
}

std::vector<std::pair<HapId, UavId>> Matching::pairs() const {
  std::vector<std::pair<HapId, UavId>> out;
  out.reserve(size_);
  for (UavId u = 0; u < assignment_.size(); ++u) {
    if (assignment_[u]) out.emplace_back(*assignment_[u], u);
  }
  return out;
}

void validate(const Matching& matching, std::span<const int> capacities) {
  if (capacities.size() != matching.n_haps()) {
    throw ContractViolation("matching has " + std::to_string(matching.n_haps()) + " HAPs but " +
                            std::to_string(capacities.size()) + " capacities were given");
  }
  for (HapId h = 0; h < matching.n_haps(); ++h) {
    if (static_cast<long long>(matching.load(h)) > capacities[h]) {
      throw ContractViolation("HAP " + std::to_string(h) + " holds " + std::to_string(matching.load(h)) +
                              " UAVs, capacity " + std::to_string(capacities[h]));
    }
  }
}

RankTable::RankTable(const PreferenceProfile& profile)
    : n_(profile.n_haps()), m_(profile.m_uavs()), hap_rank_(n_ * m_), uav_rank_(n_ * m_) {
  for (HapId h = 0; h < n_; ++h) {
    const auto& list = profile.hap_prefs[h];
    for (std::size_t r = 0; r < list.size(); ++r) hap_rank_[h * m_ + list[r]] = static_cast<std::uint32_t>(r);
  }
  for (UavId u = 0; u < m_; ++u) {
    const auto& list = profile.uav_prefs[u];
    for (std::size_t r = 0; r < list.size(); ++r) uav_rank_[u * n_ + list[r]] = static_cast<std::uint32_t>(r);
  }
}

std::string_view to_string(BlockingReason reason) noexcept {
  switch (reason) {
    case BlockingReason::uav_unmatched: return "uav_unmatched";
    case BlockingReason::uav_prefers: return "uav_prefers";
    case BlockingReason::hap_has_free_slot: return "hap_has_free_slot";
    case BlockingReason::hap_prefers_over_worst: return "hap_prefers_over_worst";
  }
  return "unknown";
}

namespace {

void check_capacities(std::span<const int> capacities, std::size_t n_haps) {
  if (capacities.size() != n_haps) {
    throw ContractViolation("expected " + std::to_string(n_haps) + " capacities, got " +
                            std::to_string(capacities.size()));
  }
  for (std::size_t h = 0; h < capacities.size(); ++h) {
    if (capacities[h] < 1) throw ContractViolation("HAP " + std::to_string(h) + " has capacity < 1");
  }
}

}  // namespace

Matching gale_shapley(const PreferenceProfile& profile, std::span<const int> capacities, GaleShapleyStats* stats,
                      const GaleShapleyOptions& options) {
  validate(profile);
  const std::size_t n = profile.n_haps();
  const std::size_t m = profile.m_uavs();
  check_capacities(capacities, n);

  const RankTable ranks(profile);
  Matching matching(n, m);
  GaleShapleyStats local;
  std::vector<std::size_t> next_choice(n, 0);
  std::vector<char> queued(n, 0);
  std::deque<HapId> active;

  auto can_propose = [&](HapId h) {
    return static_cast<long long>(matching.load(h)) < capacities[h] && next_choice[h] < m;
  };
  auto enqueue = [&](HapId h) {
    if (!queued[h] && can_propose(h)) {
      queued[h] = 1;
      active.push_back(h);
    }
  };

  for (HapId h = 0; h < n; ++h) enqueue(h);

  while (!active.empty()) {
    const HapId h = active.front();
    active.pop_front();
    queued[h] = 0;

    const UavId u = profile.hap_prefs[h][next_choice[h]++];
    ++local.proposals;
    if (options.trace) *options.trace << "PROPOSE " << h << ' ' << u << '\n';

    const auto current = matching.hap_of(u);
    if (!current) {
      matching.assign(u, h);
      if (options.trace) *options.trace << "ACCEPT " << h << ' ' << u << '\n';
    } else if (ranks.uav_rank(u, h) < ranks.uav_rank(u, *current)) {
      const HapId previous = *current;
      matching.assign(u, h);
      ++local.swaps;
      if (options.trace) *options.trace << "SWAP " << u << ' ' << previous << ' ' << h << '\n';
      enqueue(previous);
    } else {
      ++local.rejections;
      if (options.trace) *options.trace << "REJECT " << h << ' ' << u << '\n';
    }
    assert(static_cast<long long>(matching.load(h)) <= capacities[h]);
    if (options.on_step) options.on_step(matching);
    enqueue(h);
  }

  if (stats) *stats = local;
  return matching;
}

Matching random_matching(Rng& rng, std::size_t n_haps, std::span<const int> capacities, std::size_t m_uavs) {
  check_capacities(capacities, n_haps);
  std::vector<UavId> order(m_uavs);
  std::iota(order.begin(), order.end(), UavId{0});
  // Fisher-Yates, drawing from the portable integer sampler.
  for (std::size_t i = m_uavs; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
    std::swap(order[i - 1], order[j]);
  }

  std::vector<HapId> open(n_haps);
  std::iota(open.begin(), open.end(), HapId{0});
  std::vector<int> remaining(capacities.begin(), capacities.end());

  Matching matching(n_haps, m_uavs);
  for (UavId u : order) {
    if (open.empty()) break;
    const auto k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(open.size() - 1)));
    const HapId h = open[k];
    matching.assign(u, h);
    if (--remaining[h] == 0) {
      open[k] = open.back();
      open.pop_back();
    }
  }
  return matching;
}

std::vector<BlockingPair> find_blocking_pairs(const Matching& matching, const PreferenceProfile& profile,
                                              std::span<const int> capacities) {
  validate(profile);
  const std::size_t n = profile.n_haps();
  const std::size_t m = profile.m_uavs();
  if (matching.n_haps() != n || matching.m_uavs() != m) {
    throw ContractViolation("find_blocking_pairs: matching and profile dimensions differ");
  }
  validate(matching, capacities);

  const RankTable ranks(profile);
  // Rank of the least-preferred UAV each HAP holds; -1 when it holds none.
  std::vector<long long> worst(n, -1);
  for (const auto& [h, u] : matching.pairs()) {
    worst[h] = std::max(worst[h], static_cast<long long>(ranks.hap_rank(h, u)));
  }

  std::vector<BlockingPair> out;
  for (HapId h = 0; h < n; ++h) {
    const bool free_slot = static_cast<long long>(matching.load(h)) < capacities[h];
    for (UavId u = 0; u < m; ++u) {
      const auto current = matching.hap_of(u);
      if (current == h) continue;

      BlockingPair bp{h, u, BlockingReason::uav_unmatched, BlockingReason::hap_has_free_slot};
      if (current) {
        if (ranks.uav_rank(u, h) >= ranks.uav_rank(u, *current)) continue;
        bp.uav_reason = BlockingReason::uav_prefers;
      }
      if (!free_slot) {
        if (static_cast<long long>(ranks.hap_rank(h, u)) >= worst[h]) continue;
        bp.hap_reason = BlockingReason::hap_prefers_over_worst;
      }
      out.push_back(bp);
    }
  }
  return out;
}

namespace {

class StableEnumerator {
 public:
  StableEnumerator(const PreferenceProfile& profile, std::span<const int> capacities)
      : profile_(profile),
        capacities_(capacities),
        remaining_(capacities.begin(), capacities.end()),
        current_(profile.n_haps(), profile.m_uavs()) {
    const long long total = std::accumulate(capacities.begin(), capacities.end(), 0LL);
    target_ = std::min<std::size_t>(static_cast<std::size_t>(total), profile.m_uavs());
  }

  std::vector<Matching> run() {
    visit(0);
    return std::move(found_);
  }

 private:
  void visit(UavId u) {
    const std::size_t m = profile_.m_uavs();
    if (u == m) {
      if (current_.size() == target_ && find_blocking_pairs(current_, profile_, capacities_).empty()) {
        found_.push_back(current_);
      }
      return;
    }
    // Leave u unmatched only if the remaining UAVs can still reach the target size.
    if (current_.size() + (m - u - 1) >= target_) visit(u + 1);
    if (current_.size() >= target_) return;
    for (HapId h = 0; h < profile_.n_haps(); ++h) {
      if (remaining_[h] == 0) continue;
      --remaining_[h];
      current_.assign(u, h);
      visit(u + 1);
      current_.unassign(u);
      ++remaining_[h];
    }
  }

  const PreferenceProfile& profile_;
  std::span<const int> capacities_;
  std::vector<int> remaining_;
  Matching current_;
  std::size_t target_ = 0;
  std::vector<Matching> found_;
};

}  // namespace

std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& profile, std::span<const int> capacities) {
  validate(profile);
  check_capacities(capacities, profile.n_haps());
  const long long total = std::accumulate(capacities.begin(), capacities.end(), 0LL);
  if (total > kEnumerationMaxCapacity || profile.m_uavs() > kEnumerationMaxUavs) {
    throw SizeError("enumerate_stable_matchings: instance exceeds the guard (total capacity " +
                    std::to_string(total) + ", UAVs " + std::to_string(profile.m_uavs()) + ")");
  }
  return StableEnumerator(profile, capacities).run();
}

}  // namespace hapmatch
