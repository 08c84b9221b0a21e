#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hapmatch/geo.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/rng.hpp"

namespace hapmatch {

/// Partial many-to-one assignment of UAVs to HAPs. Capacity is enforced by the
/// algorithms and checked by validate(); this type only tracks loads.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t n_haps, std::size_t m_uavs);

  std::size_t n_haps() const noexcept { return loads_.size(); }
  std::size_t m_uavs() const noexcept { return assignment_.size(); }

  /// Number of matched pairs.
  std::size_t size() const noexcept { return size_; }

  std::optional<HapId> hap_of(UavId u) const { return assignment_.at(u); }
  std::size_t load(HapId h) const { return loads_.at(h); }

  /// Assigns u to h, releasing any previous assignment of u.
  void assign(UavId u, HapId h);
  void unassign(UavId u);

  /// UAVs currently held by h, ascending id.
  std::vector<UavId> uavs_of(HapId h) const;

  /// (hap, uav) pairs in ascending UAV order.
  std::vector<std::pair<HapId, UavId>> pairs() const;

  const std::vector<std::optional<HapId>>& assignment() const noexcept { return assignment_; }

  friend bool operator==(const Matching& a, const Matching& b) { return a.assignment_ == b.assignment_; }

 private:
  std::vector<std::optional<HapId>> assignment_;
  std::vector<std::size_t> loads_;
  std::size_t size_ = 0;
};

/// Throws ContractViolation if dimensions disagree or a HAP exceeds its capacity.
void validate(const Matching& matching, std::span<const int> capacities);

/// Per-agent rank lookup: rank[a][b] is b's position in a's list.
struct RankTable {
  explicit RankTable(const PreferenceProfile& profile);

  std::size_t hap_rank(HapId h, UavId u) const { return hap_rank_[h * m_ + u]; }
  std::size_t uav_rank(UavId u, HapId h) const { return uav_rank_[u * n_ + h]; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::uint32_t> hap_rank_;
  std::vector<std::uint32_t> uav_rank_;
};

enum class BlockingReason {
  uav_unmatched,
  uav_prefers,
  hap_has_free_slot,
  hap_prefers_over_worst,
};

std::string_view to_string(BlockingReason reason) noexcept;

/// A pair that would both rather be matched to each other. The UAV-side and HAP-side
/// conditions are recorded separately; both hold.
struct BlockingPair {
  HapId hap = 0;
  UavId uav = 0;
  BlockingReason uav_reason = BlockingReason::uav_unmatched;
  BlockingReason hap_reason = BlockingReason::hap_has_free_slot;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

struct GaleShapleyStats {
  std::size_t proposals = 0;
  std::size_t rejections = 0;
  std::size_t swaps = 0;
};

struct GaleShapleyOptions {
  /// Receives one line per event: "PROPOSE h u", "ACCEPT h u", "REJECT h u", "SWAP u h_old h_new".
  std::ostream* trace = nullptr;
  /// Called with the tentative matching after every proposal is resolved.
  std::function<void(const Matching&)> on_step;
};

/// HAP-proposing deferred acceptance with capacities.
///
/// HAPs with a free slot and an unexhausted list wait in a FIFO queue, seeded in id
/// order. Each activation issues one proposal to the next UAV on the HAP's list. A free
/// UAV accepts; a held UAV keeps whichever HAP it ranks higher and the loser regains a
/// slot. The run ends when every HAP is full or has proposed to every UAV. The result
/// is the HAP-optimal stable matching.
///
/// Throws ContractViolation on a malformed profile or non-positive capacity.
Matching gale_shapley(const PreferenceProfile& profile, std::span<const int> capacities,
                      GaleShapleyStats* stats = nullptr, const GaleShapleyOptions& options = {});

/// Baseline: visits UAVs in a uniformly shuffled order and gives each one to a HAP
/// drawn uniformly from those with a free slot.
Matching random_matching(Rng& rng, std::size_t n_haps, std::span<const int> capacities, std::size_t m_uavs);

/// Every unmatched-together pair (h, u) where u is unmatched or prefers h to its HAP,
/// and h has a free slot or prefers u to the worst UAV it holds. Ordered by HAP, then UAV.
std::vector<BlockingPair> find_blocking_pairs(const Matching& matching, const PreferenceProfile& profile,
                                              std::span<const int> capacities);

inline constexpr int kEnumerationMaxCapacity = 8;
inline constexpr std::size_t kEnumerationMaxUavs = 8;

/// All stable matchings of a small instance, by exhaustive search over capacity-respecting
/// assignments of size min(total capacity, m). Throws SizeError beyond the guard.
std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& profile,
                                                 std::span<const int> capacities);

}  // namespace hapmatch
