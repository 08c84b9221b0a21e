#pragma once

// Test-only reference routines, written directly from the definitions and kept apart
// from the library code paths they check.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "hapmatch/matching.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/rng.hpp"

namespace hapmatch::oracle {

inline std::size_t position(const std::vector<std::size_t>& list, std::size_t id) {
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), id) - list.begin());
}

/// Blocking-pair count straight from the hospital-residents definition.
inline std::size_t naive_blocking_count(const Matching& m, const PreferenceProfile& p, const std::vector<int>& caps) {
  std::size_t count = 0;
  for (std::size_t h = 0; h < p.n_haps(); ++h) {
    const auto held = m.uavs_of(h);
    for (std::size_t u = 0; u < p.m_uavs(); ++u) {
      const auto cur = m.hap_of(u);
      if (cur == h) continue;
      const bool uav_wants = !cur || position(p.uav_prefs[u], h) < position(p.uav_prefs[u], *cur);
      bool hap_wants = static_cast<int>(held.size()) < caps[h];
      for (std::size_t v : held) {
        if (position(p.hap_prefs[h], u) < position(p.hap_prefs[h], v)) hap_wants = true;
      }
      if (uav_wants && hap_wants) ++count;
    }
  }
  return count;
}

/// True when every HAP does at least as well in `a` as in `b`: its held UAVs, sorted by
/// its own ranking, compare slot by slot no worse, and it holds no fewer.
inline bool hap_weakly_better(const Matching& a, const Matching& b, const PreferenceProfile& p) {
  for (std::size_t h = 0; h < p.n_haps(); ++h) {
    std::vector<std::size_t> ra, rb;
    for (std::size_t u : a.uavs_of(h)) ra.push_back(position(p.hap_prefs[h], u));
    for (std::size_t u : b.uavs_of(h)) rb.push_back(position(p.hap_prefs[h], u));
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    if (ra.size() < rb.size()) return false;
    for (std::size_t i = 0; i < rb.size(); ++i) {
      if (ra[i] > rb[i]) return false;
    }
  }
  return true;
}

inline std::vector<std::size_t> shuffled_range(Rng& rng, std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)))]);
  }
  return v;
}

/// Uniformly random complete strict preferences.
inline PreferenceProfile random_profile(Rng& rng, std::size_t n, std::size_t m) {
  PreferenceProfile p;
  for (std::size_t h = 0; h < n; ++h) p.hap_prefs.push_back(shuffled_range(rng, m));
  for (std::size_t u = 0; u < m; ++u) p.uav_prefs.push_back(shuffled_range(rng, n));
  return p;
}

struct Instance {
  PreferenceProfile profile;
  std::vector<int> capacities;
};

/// Random instance with n <= max_n, capacity <= max_cap, m <= max_m.
inline Instance random_instance(Rng& rng, std::size_t max_n, int max_cap, std::size_t max_m) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_n)));
  const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_m)));
  Instance inst;
  for (std::size_t h = 0; h < n; ++h) inst.capacities.push_back(static_cast<int>(rng.uniform_int(1, max_cap)));
  inst.profile = random_profile(rng, n, m);
  return inst;
}

/// Random instance inside the enumeration guard: total capacity <= 8, m <= 8.
inline Instance random_small_instance(Rng& rng) {
  Instance inst;
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
  int budget = 8;
  for (std::size_t h = 0; h < n; ++h) {
    const int left_for_others = static_cast<int>(n - h - 1);
    const int cap = static_cast<int>(rng.uniform_int(1, std::min(3, budget - left_for_others)));
    inst.capacities.push_back(cap);
    budget -= cap;
  }
  const auto m = static_cast<std::size_t>(rng.uniform_int(1, 8));
  inst.profile = random_profile(rng, n, m);
  return inst;
}

}  // namespace hapmatch::oracle
