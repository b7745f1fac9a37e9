#include "pcr/checkpoint_cache.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace pcr::cache {

namespace {

constexpr std::size_t kHeaderBytes = 4 + 4 + 8;
constexpr std::size_t kRecordBytes = 4 * 8;

void put_u32(std::vector<unsigned char>& buf, u32 v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u64(std::vector<unsigned char>& buf, u64 v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
u32 get_u32(const unsigned char* p) {
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= u32(p[i]) << (8 * i);
    return v;
}
u64 get_u64(const unsigned char* p) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(p[i]) << (8 * i);
    return v;
}

} // namespace

u32 crc32(const unsigned char* data, std::size_t len, u32 seed) {
    static const auto table = [] {
        std::array<u32, 256> t{};
        for (u32 i = 0; i < 256; ++i) {
            u32 c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    u32 crc = ~seed;
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
    return ~crc;
}

LoadResult load(const std::filesystem::path& path, u32 expected_version) {
    LoadResult res;
    std::ifstream in(path, std::ios::binary);
    if (!in) return res; // missing

    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    res.status = LoadStatus::corrupt;
    if (bytes.size() < kHeaderBytes + 4) return res;
    if (get_u32(bytes.data()) != kMagic) return res;

    std::size_t payload = bytes.size() - 4;
    u32 stored_crc = get_u32(bytes.data() + payload);
    if (crc32(bytes.data(), payload) != stored_crc) return res;
    if ((payload - kHeaderBytes) % kRecordBytes != 0) return res;

    res.version = get_u32(bytes.data() + 4);
    res.max_x = get_u64(bytes.data() + 8);
    if (res.version != expected_version) {
        res.status = LoadStatus::stale_version;
        return res;
    }

    std::size_t n = (payload - kHeaderBytes) / kRecordBytes;
    res.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned char* p = bytes.data() + kHeaderBytes + i * kRecordBytes;
        PrimeCheckpoint cp;
        cp.x = get_u64(p);
        cp.pi = get_u64(p + 8);
        u64 lo = get_u64(p + 16);
        u64 hi = get_u64(p + 24);
        cp.prime_sum = (static_cast<u128>(hi) << 64) | lo;
        res.records.push_back(cp);
    }
    res.status = LoadStatus::ok;
    return res;
}

void save(const std::filesystem::path& path, std::vector<PrimeCheckpoint> records, u32 version,
          u64 max_x) {
    std::sort(records.begin(), records.end(),
              [](const PrimeCheckpoint& a, const PrimeCheckpoint& b) { return a.x < b.x; });

    std::vector<unsigned char> buf;
    buf.reserve(kHeaderBytes + records.size() * kRecordBytes + 4);
    put_u32(buf, kMagic);
    put_u32(buf, version);
    put_u64(buf, max_x);
    for (const auto& cp : records) {
        put_u64(buf, cp.x);
        put_u64(buf, cp.pi);
        put_u64(buf, static_cast<u64>(cp.prime_sum));
        put_u64(buf, static_cast<u64>(cp.prime_sum >> 64));
    }
    put_u32(buf, crc32(buf.data(), buf.size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cache: cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
}

} // namespace pcr::cache
