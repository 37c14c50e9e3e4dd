#include "ewb/io/snapshot_file.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

namespace ewb {

namespace {

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    if (std::fwrite(b, 1, 4, f) != 4) throw Error("snapshot write failed");
}

std::uint32_t get_u32(std::FILE* f) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) throw Error("snapshot read failed");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
           (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

void put_f64(std::FILE* f, double v) {
    static_assert(sizeof(double) == 8);
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    if (std::fwrite(b, 1, 8, f) != 8) throw Error("snapshot write failed");
}

double get_f64(std::FILE* f) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw Error("snapshot read failed");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

void put_array(std::FILE* f, const Eigen::ArrayXd& a) {
    // IEEE-754 binary64 little endian; bulk write on little-endian hosts
    if constexpr (std::endian::native == std::endian::little) {
        if (std::fwrite(a.data(), 8, a.size(), f) != std::size_t(a.size()))
            throw Error("snapshot write failed");
    } else {
        for (std::int64_t i = 0; i < a.size(); ++i) put_f64(f, a[i]);
    }
}

Eigen::ArrayXd get_array(std::FILE* f, std::int64_t count) {
    Eigen::ArrayXd a(count);
    if constexpr (std::endian::native == std::endian::little) {
        if (std::fread(a.data(), 8, count, f) != std::size_t(count))
            throw Error("snapshot read failed");
    } else {
        for (std::int64_t i = 0; i < count; ++i) a[i] = get_f64(f);
    }
    return a;
}

}  // namespace

struct SnapshotWriter::Impl {
    std::FILE* file = nullptr;
    std::filesystem::path final_path;
    std::filesystem::path tmp_path;
    std::uint32_t count = 0;
    long count_pos = 0;
    bool finalized = false;
};

SnapshotWriter::SnapshotWriter(const std::filesystem::path& path, int grid_n,
                               double length, double gamma)
    : impl_(std::make_unique<Impl>()) {
    impl_->final_path = path;
    impl_->tmp_path = path.string() + ".tmp";
    impl_->file = std::fopen(impl_->tmp_path.c_str(), "wb");
    if (!impl_->file) throw Error("cannot open " + impl_->tmp_path.string());
    std::fwrite(kSnapshotMagic, 1, kSnapshotMagicLen, impl_->file);
    put_u32(impl_->file, kSnapshotVersion);
    put_u32(impl_->file, kTagSnapshots);
    put_u32(impl_->file, std::uint32_t(grid_n));
    put_f64(impl_->file, length);
    put_f64(impl_->file, gamma);
    impl_->count_pos = std::ftell(impl_->file);
    put_u32(impl_->file, 0);  // patched on finalize
}

SnapshotWriter::~SnapshotWriter() {
    if (impl_ && !impl_->finalized) {
        if (impl_->file) std::fclose(impl_->file);
        std::error_code ec;
        std::filesystem::remove(impl_->tmp_path, ec);
    }
}

void SnapshotWriter::append(const FluidState& state) {
    put_f64(impl_->file, state.time());
    put_array(impl_->file, state.rho_log().values());
    for (int c = 0; c < 3; ++c) put_array(impl_->file, state.velocity()[c].values());
    ++impl_->count;
}

void SnapshotWriter::finalize() {
    std::fseek(impl_->file, impl_->count_pos, SEEK_SET);
    put_u32(impl_->file, impl_->count);
    std::fclose(impl_->file);
    impl_->file = nullptr;
    std::filesystem::rename(impl_->tmp_path, impl_->final_path);
    impl_->finalized = true;
}

void write_snapshot_file(const std::filesystem::path& path, const SnapshotStack& stack) {
    if (stack.size() == 0) throw Error("write_snapshot_file: empty stack");
    const Grid& g = stack.at(0).grid();
    SnapshotWriter w(path, g.n(), g.length(), stack.eos().gamma);
    for (std::size_t i = 0; i < stack.size(); ++i) w.append(stack.at(i));
    w.finalize();
}

SnapshotStack read_snapshot_file(const std::filesystem::path& path,
                                 const EquationOfState* eos_override) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Error("cannot open " + path.string());
    struct Closer {
        std::FILE* f;
        ~Closer() { std::fclose(f); }
    } closer{f};

    char magic[kSnapshotMagicLen];
    if (std::fread(magic, 1, kSnapshotMagicLen, f) != kSnapshotMagicLen ||
        std::memcmp(magic, kSnapshotMagic, kSnapshotMagicLen) != 0)
        throw Error("snapshot file: bad magic");
    if (get_u32(f) != kSnapshotVersion) throw Error("snapshot file: unsupported version");
    if (get_u32(f) != kTagSnapshots) throw Error("snapshot file: not a snapshot record");

    const int n = int(get_u32(f));
    const double length = get_f64(f);
    const double gamma = get_f64(f);
    const std::uint32_t count = get_u32(f);

    GridPtr grid = make_grid(n, length);
    EquationOfState eos = eos_override ? *eos_override : EquationOfState(gamma);
    std::vector<FluidState> states;
    states.reserve(count);
    const std::int64_t npts = grid->size();
    for (std::uint32_t i = 0; i < count; ++i) {
        const double t = get_f64(f);
        ScalarField rho(grid, get_array(f, npts));
        ScalarField v1(grid, get_array(f, npts));
        ScalarField v2(grid, get_array(f, npts));
        ScalarField v3(grid, get_array(f, npts));
        states.emplace_back(std::move(rho),
                            VectorField(std::move(v1), std::move(v2), std::move(v3)), t);
    }
    return SnapshotStack(std::move(states), eos);
}

}  // namespace ewb
