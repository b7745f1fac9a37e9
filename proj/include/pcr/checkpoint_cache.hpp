#pragma once

#include "pcr/prime_engine.hpp"

#include <filesystem>
#include <vector>

namespace pcr::cache {

// File layout, all little-endian:
//   u32 magic 'PCRC' | u32 version | u64 max_x
//   records: (x u64, pi u64, prime_sum lo u64, prime_sum hi u64)*
//   u32 crc32 over every preceding byte
enum class LoadStatus { ok, missing, stale_version, corrupt };

struct LoadResult {
    LoadStatus status = LoadStatus::missing;
    u32 version = 0;
    u64 max_x = 0;
    std::vector<PrimeCheckpoint> records;
};

constexpr u32 kMagic = 0x43524350; // "PCRC"

u32 crc32(const unsigned char* data, std::size_t len, u32 seed = 0);

// Stale version or corrupt payload yields an empty record set with the
// matching status; callers recompute instead of trusting the file.
LoadResult load(const std::filesystem::path& path, u32 expected_version);

void save(const std::filesystem::path& path, std::vector<PrimeCheckpoint> records, u32 version,
          u64 max_x);

} // namespace pcr::cache
