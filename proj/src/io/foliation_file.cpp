#include "ewb/io/foliation_file.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

#include "ewb/io/snapshot_file.hpp"

namespace ewb {

namespace {

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    if (std::fwrite(b, 1, 4, f) != 4) throw Error("foliation write failed");
}

std::uint32_t get_u32(std::FILE* f) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) throw Error("foliation read failed");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

void put_f64(std::FILE* f, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    if (std::fwrite(b, 1, 8, f) != 8) throw Error("foliation write failed");
}

double get_f64(std::FILE* f) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw Error("foliation read failed");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

void put_block(std::FILE* f, const Eigen::ArrayXd& a) {
    if constexpr (std::endian::native == std::endian::little) {
        if (std::fwrite(a.data(), 8, a.size(), f) != std::size_t(a.size()))
            throw Error("foliation write failed");
    } else {
        for (std::int64_t i = 0; i < a.size(); ++i) put_f64(f, a[i]);
    }
}

Eigen::ArrayXd get_block(std::FILE* f, std::int64_t count) {
    Eigen::ArrayXd a(count);
    if constexpr (std::endian::native == std::endian::little) {
        if (std::fread(a.data(), 8, count, f) != std::size_t(count))
            throw Error("foliation read failed");
    } else {
        for (std::int64_t i = 0; i < count; ++i) a[i] = get_f64(f);
    }
    return a;
}

}  // namespace

void write_foliation_file(const std::filesystem::path& path,
                          const std::vector<FoliationGraph>& graphs) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw Error("cannot open " + tmp.string());
    std::fwrite(kSnapshotMagic, 1, kSnapshotMagicLen, f);
    put_u32(f, kSnapshotVersion);
    put_u32(f, kTagFoliation);
    put_u32(f, std::uint32_t(graphs.size()));
    for (const auto& g : graphs) {
        for (double c : g.theta) put_f64(f, c);
        put_u32(f, std::uint32_t(g.axis));
        put_f64(f, g.sign);
        put_f64(f, g.r);
        put_u32(f, std::uint32_t(g.m));
        put_f64(f, g.span);
        put_f64(f, g.max_graph_residual);
        put_f64(f, g.max_null_drift);
        put_u32(f, std::uint32_t(g.times.size()));
        for (double t : g.times) put_f64(f, t);
        for (const auto& phi : g.phi) put_block(f, phi);
    }
    std::fclose(f);
    std::filesystem::rename(tmp, path);
}

std::vector<FoliationGraph> read_foliation_file(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Error("cannot open " + path.string());
    struct Closer {
        std::FILE* f;
        ~Closer() { std::fclose(f); }
    } closer{f};

    char magic[kSnapshotMagicLen];
    if (std::fread(magic, 1, kSnapshotMagicLen, f) != kSnapshotMagicLen ||
        std::memcmp(magic, kSnapshotMagic, kSnapshotMagicLen) != 0)
        throw Error("foliation file: bad magic");
    if (get_u32(f) != kSnapshotVersion)
        throw Error("foliation file: unsupported version");
    if (get_u32(f) != kTagFoliation)
        throw Error("foliation file: not a foliation record");

    std::vector<FoliationGraph> graphs(get_u32(f));
    for (auto& g : graphs) {
        for (double& c : g.theta) c = get_f64(f);
        g.axis = int(get_u32(f));
        g.sign = get_f64(f);
        g.r = get_f64(f);
        g.m = int(get_u32(f));
        g.span = get_f64(f);
        g.max_graph_residual = get_f64(f);
        g.max_null_drift = get_f64(f);
        g.times.resize(get_u32(f));
        for (double& t : g.times) t = get_f64(f);
        g.phi.resize(g.times.size());
        for (auto& phi : g.phi) phi = get_block(f, std::int64_t(g.m) * g.m);
    }
    return graphs;
}

}  // namespace ewb
