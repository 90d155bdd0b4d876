#ifndef BISHOPLAB_CACHE_HPP
#define BISHOPLAB_CACHE_HPP

#include <string>

namespace bishoplab {

// Content-addressed blob store keyed by arbitrary strings.  Entries carry a
// checksum; corrupt entries read as misses so callers recompute and
// overwrite.  Disabled when the directory is empty.
class ContentCache {
public:
    explicit ContentCache(std::string dir);
    static ContentCache from_env();  // BISHOPLAB_CACHE_DIR

    bool enabled() const { return !dir_.empty(); }
    bool get(const std::string& key, std::string& blob) const;
    void put(const std::string& key, const std::string& blob) const;

    mutable long hits = 0;
    mutable long misses = 0;

private:
    std::string dir_;
    std::string path_for(const std::string& key) const;
};

}  // namespace bishoplab

#endif
