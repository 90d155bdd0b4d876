#include "bishoplab/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bishoplab/util.hpp"

namespace bishoplab {

void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for write: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {
constexpr char kMagic[8] = {'B', 'L', 'C', 'A', 'C', 'H', 'E', '1'};

void put_u64(std::string& s, uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}
uint64_t get_u64(const std::string& s, size_t off) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(uint8_t(s[off + size_t(i)])) << (8 * i);
    return v;
}
}  // namespace

ContentCache::ContentCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

ContentCache ContentCache::from_env() {
    const char* d = std::getenv("BISHOPLAB_CACHE_DIR");
    return ContentCache(d ? d : "");
}

std::string ContentCache::path_for(const std::string& key) const {
    char hex[33];
    uint64_t h1 = fnv1a(key);
    uint64_t h2 = fnv1a(key.data(), key.size(), 0x9e3779b97f4a7c15ULL);
    std::snprintf(hex, sizeof hex, "%016llx%016llx", (unsigned long long)h1,
                  (unsigned long long)h2);
    return dir_ + "/" + hex + ".blob";
}

bool ContentCache::get(const std::string& key, std::string& blob) const {
    if (!enabled()) return false;
    std::string path = path_for(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ++misses;
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string raw = ss.str();
    if (raw.size() < 24 || std::memcmp(raw.data(), kMagic, 8) != 0) {
        ++misses;
        return false;
    }
    uint64_t checksum = get_u64(raw, 8);
    uint64_t len = get_u64(raw, 16);
    if (raw.size() != 24 + len) {
        ++misses;
        return false;
    }
    std::string payload = raw.substr(24);
    if (fnv1a(payload) != checksum) {
        ++misses;  // corrupt entry: caller recomputes and overwrites
        return false;
    }
    blob = std::move(payload);
    ++hits;
    return true;
}

void ContentCache::put(const std::string& key, const std::string& blob) const {
    if (!enabled()) return;
    std::string raw(kMagic, 8);
    put_u64(raw, fnv1a(blob));
    put_u64(raw, blob.size());
    raw += blob;
    atomic_write_file(path_for(key), raw);
}

}  // namespace bishoplab
