#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "simon/hsp.hpp"

namespace simon::test {

/// Catalog and CG cache per group name, built once per process.
inline std::shared_ptr<const CGCache> cache(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CGCache>> memo;
  std::lock_guard lock(mu);
  auto& slot = memo[name];
  if (!slot) slot = make_cg_cache(build_group(GroupSpec::parse(name)));
  return slot;
}

inline const GroupTable& group(const std::string& name) { return cache(name)->catalog().group(); }

inline int elem(const std::string& group_name, const std::string& token) {
  const int x = group(group_name).resolve(token);
  if (x < 0) throw std::invalid_argument("no element " + token);
  return x;
}

/// `hidden` is a comma-separated element list, or empty for trivial H.
inline HSPInstance instance(const std::string& name, int n, const std::string& mu,
                            const std::string& hidden = "") {
  std::vector<int> m;
  std::stringstream ss(hidden);
  for (std::string tok; std::getline(ss, tok, ',');) m.push_back(elem(name, tok));
  return HSPInstance::make(cache(name), n, elem(name, mu), std::move(m));
}

/// The same element in every coordinate.
inline HSPInstance uniform_instance(const std::string& name, int n, const std::string& m) {
  std::string h;
  for (int i = 0; i < n; ++i) h += (i ? "," : "") + m;
  return instance(name, n, m, h);
}

// S3 catalog labels, fixed by the canonical ordering.
inline constexpr IrrepLabel kTriv = 0;
inline constexpr IrrepLabel kSign = 1;
inline constexpr IrrepLabel kStd = 2;

}  // namespace simon::test
