#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bishoplab/cache.hpp>
#include <bishoplab/harness.hpp>
#include <bishoplab/util.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace bishoplab;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("bl_test_") + tag + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const char* name) const { return (path / name).string(); }
};

ExperimentConfig tiny_config(const TempDir& dir, const char* out) {
    ExperimentConfig cfg;
    cfg.alpha_key = "golden";
    cfg.depth = 24;
    cfg.log2G = 9;
    cfg.trunc_N = 128;
    cfg.mc_samples = 2000;
    cfg.seed = 5;
    cfg.n_max = 32;
    cfg.out_path = dir.str(out);
    return cfg;
}
}  // namespace

TEST_CASE("minimal config produces a complete bundle quickly") {
    TempDir dir("bundle");
    auto cfg = tiny_config(dir, "rep.json");
    ReportBundle b = run(cfg);
    CHECK(b.ok);
    CHECK(b.json.find("\"cf\"") != std::string::npos);
    CHECK(b.json.find("\"classify\"") != std::string::npos);
    CHECK(b.json.find("\"measure_B\"") != std::string::npos);
    CHECK(b.json.find("\"profile\"") != std::string::npos);
    CHECK(b.json.find("\"verdicts\"") != std::string::npos);
    CHECK(fs::exists(cfg.out_path));
    CHECK(read_file(cfg.out_path) == b.json);
}

TEST_CASE("determinism: identical config gives byte-identical reports") {
    TempDir dir("determ");
    auto cfg1 = tiny_config(dir, "a.json");
    auto cfg2 = tiny_config(dir, "b.json");
    ReportBundle b1 = run(cfg1);
    ReportBundle b2 = run(cfg2);
    // out path is echoed in the config block; compare with it normalized
    std::string j1 = b1.json, j2 = b2.json;
    auto scrub = [](std::string& s, const std::string& from) {
        auto pos = s.find(from);
        while (pos != std::string::npos) {
            s.erase(pos, from.size());
            pos = s.find(from);
        }
    };
    scrub(j1, "a.json");
    scrub(j2, "b.json");
    CHECK(j1 == j2);
}

TEST_CASE("invalid alpha key yields a structured error report, not a crash") {
    TempDir dir("err");
    auto cfg = tiny_config(dir, "bad.json");
    cfg.alpha_key = "not-a-key";
    ReportBundle b = run(cfg);
    CHECK(!b.ok);
    CHECK(b.json.find("\"error\"") != std::string::npos);
    CHECK(fs::exists(cfg.out_path));
}

TEST_CASE("config JSON round-trip") {
    ExperimentConfig cfg;
    cfg.alpha_key = "sqrt2m1";
    cfg.seed = 99;
    cfg.n_max = 77;
    ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.alpha_key == "sqrt2m1");
    CHECK(back.seed == 99);
    CHECK(back.n_max == 77);
}

TEST_CASE("cache: cold vs warm runs agree; corrupt entries recompute") {
    TempDir dir("cache");
    auto cfg = tiny_config(dir, "c1.json");
    cfg.cache_dir = dir.str("cache");
    ReportBundle cold = run(cfg);
    cfg.out_path = dir.str("c2.json");
    ReportBundle warm = run(cfg);
    std::string j1 = cold.json, j2 = warm.json;
    auto scrub = [](std::string& s, const std::string& from) {
        for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from))
            s.erase(pos, from.size());
    };
    scrub(j1, "c1.json");
    scrub(j2, "c2.json");
    CHECK(j1 == j2);

    // corrupt every cache entry: results must still be identical
    for (const auto& entry : fs::directory_iterator(cfg.cache_dir)) {
        std::ofstream f(entry.path(), std::ios::binary | std::ios::trunc);
        f << "garbage";
    }
    cfg.out_path = dir.str("c3.json");
    ReportBundle redo = run(cfg);
    std::string j3 = redo.json;
    scrub(j3, "c3.json");
    CHECK(j3 == j2);

    // eviction changes nothing but timing
    fs::remove_all(cfg.cache_dir);
    fs::create_directories(cfg.cache_dir);
    cfg.out_path = dir.str("c4.json");
    ReportBundle evicted = run(cfg);
    std::string j4 = evicted.json;
    scrub(j4, "c4.json");
    CHECK(j4 == j2);
}

TEST_CASE("cache keys separate different truncations") {
    TempDir dir("keys");
    ContentCache cache(dir.str("store"));
    cache.put("profile|N=100", "AAA");
    cache.put("profile|N=200", "BBB");
    std::string blob;
    CHECK(cache.get("profile|N=100", blob));
    CHECK(blob == "AAA");
    CHECK(cache.get("profile|N=200", blob));
    CHECK(blob == "BBB");
    CHECK(!cache.get("profile|N=300", blob));
    // read-your-writes and checksum rejection
    cache.put("k", "payload");
    CHECK(cache.get("k", blob));
    CHECK(blob == "payload");
}

TEST_CASE("partial quotient JSON serializes big integers as decimal strings") {
    std::string j = partial_quotients_json("sqrt2m1", 6);
    CHECK(j.find("\"2\"") != std::string::npos);
    CHECK(j.find("\"q\"") != std::string::npos);
    CHECK(j.find("\"70\"") != std::string::npos);  // q_6 = 70... of sqrt2m1: 1,2,5,12,29,70,169
}

TEST_CASE("timings sidecar exists and is excluded from the report") {
    TempDir dir("timing");
    auto cfg = tiny_config(dir, "t.json");
    ReportBundle b = run(cfg);
    CHECK(fs::exists(cfg.out_path + ".timings.json"));
    CHECK(b.json.find("_ms") == std::string::npos);
    CHECK(b.timings_json.find("_ms") != std::string::npos);
}
