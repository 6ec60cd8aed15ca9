#include "cuspfrob/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cuspfrob {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace

std::string cache_dir() {
    if (const char* env = std::getenv("CUSPFROB_CACHE_DIR")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::string(xdg) + "/cuspfrob";
    if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/cuspfrob";
    return "";
}

std::string cache_key(int a1, int a2, int a3, int K, int D) {
    std::ostringstream s;
    s << "A=" << a1 << "," << a2 << "," << a3 << ";K=" << K << ";D=" << D
      << ";v=" << kCodeVersion;
    return hex64(fnv1a64(s.str()));
}

std::optional<std::string> cache_lookup(const std::string& key) {
    std::string dir = cache_dir();
    if (dir.empty()) return std::nullopt;
    std::filesystem::path file = std::filesystem::path(dir) / (key + ".json");
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) return std::nullopt;
    return buf.str();
}

void cache_store(const std::string& key, const std::string& bytes) {
    std::string dir = cache_dir();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::filesystem::path file = std::filesystem::path(dir) / (key + ".json");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << bytes;
}

}  // namespace cuspfrob
