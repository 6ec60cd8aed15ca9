#pragma once

#include <optional>
#include <string>

namespace cuspfrob {

// Bump when the potential file layout or the reconstruction output changes;
// stale cache entries are keyed away rather than migrated.
inline constexpr const char* kCodeVersion = "1";

// Cache directory resolution: CUSPFROB_CACHE_DIR, else XDG_CACHE_HOME or
// HOME/.cache, under a cuspfrob/ subdirectory; empty when unavailable.
std::string cache_dir();

// Content key for a reconstruction: triplet, truncation, code version.
std::string cache_key(int a1, int a2, int a3, int K, int D);

std::optional<std::string> cache_lookup(const std::string& key);
// Best effort; failures to write are silent (the cache is an accelerator).
void cache_store(const std::string& key, const std::string& bytes);

}  // namespace cuspfrob
