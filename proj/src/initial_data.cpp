#include "ewb/initial_data.hpp"

#include <cmath>

namespace ewb {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t h) {
    return (h >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
}

/// Standard normal from a hashed counter (Box-Muller).
std::complex<double> gaussian_pair(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t h1 = splitmix64(seed * 0x9e3779b97f4a7c15ULL + 2 * counter);
    const std::uint64_t h2 = splitmix64(seed * 0x9e3779b97f4a7c15ULL + 2 * counter + 1);
    const double u1 = std::max(uniform01(h1), 1e-300);
    const double u2 = uniform01(h2);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

double param(const std::map<std::string, double>& p, const std::string& key,
             double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

double require(const std::map<std::string, double>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw ConfigError("initial data: missing parameter " + key);
    return it->second;
}

}  // namespace

ScalarField random_band_limited(GridPtr grid, std::uint64_t seed, int band,
                                double amplitude, std::uint32_t tag) {
    const int n = grid->n();
    if (band < 1 || band > grid->nyquist() - 1)
        throw Error("random_band_limited: band outside the resolved range");
    Eigen::ArrayXcd spec = Eigen::ArrayXcd::Zero(grid->spec_size());
    const int nx = n / 2 + 1;

    auto spec_index = [&](int kx, int ky, int kz) {
        const int jy = ky >= 0 ? ky : ky + n;
        const int jz = kz >= 0 ? kz : kz + n;
        return std::int64_t(kx) + std::int64_t(nx) * (jy + std::int64_t(n) * jz);
    };
    auto mode_counter = [&](int kx, int ky, int kz) {
        const std::uint64_t B = 2 * std::uint64_t(band) + 3;
        return ((std::uint64_t(tag) * B + std::uint64_t(kx + band + 1)) * B +
                std::uint64_t(ky + band + 1)) * B + std::uint64_t(kz + band + 1);
    };

    const double b2 = double(band) * band + 0.25;
    for (int kx = 0; kx <= band; ++kx) {
        for (int ky = -band; ky <= band; ++ky) {
            for (int kz = -band; kz <= band; ++kz) {
                const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                if (k2 < 0.5 || k2 > b2) continue;
                // canonical representative of each conjugate pair
                if (kx == 0 && (ky < 0 || (ky == 0 && kz < 0))) continue;
                std::complex<double> c = gaussian_pair(seed, mode_counter(kx, ky, kz));
                spec[spec_index(kx, ky, kz)] = c;
                if (kx == 0) spec[spec_index(0, -ky, -kz)] = std::conj(c);
            }
        }
    }

    ScalarField f = ScalarField::from_spectrum(grid, std::move(spec));
    const double peak = f.max_abs();
    if (peak == 0.0) return f;
    return ScalarField(grid, f.values() * (amplitude / peak));
}

ScalarField bump_field(GridPtr grid, const std::array<double, 3>& center,
                       double radius, double amplitude) {
    const int n = grid->n();
    const double dx = grid->dx();
    Eigen::ArrayXd vals(grid->size());
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double rx = i * dx - center[0];
                const double ry = j * dx - center[1];
                const double rz = k * dx - center[2];
                const double r2 = (rx * rx + ry * ry + rz * rz) / (radius * radius);
                double b = 0.0;
                if (r2 < 1.0) b = std::exp(1.0 - 1.0 / (1.0 - r2));
                vals[grid->index(i, j, k)] = amplitude * b;
            }
    return ScalarField(grid, std::move(vals));
}

FluidState make_initial_state(GridPtr grid, const InitialDataSpec& spec) {
    const int n = grid->n();
    const double dx = grid->dx();
    auto coord_field = [&](int axis) {
        Eigen::ArrayXd vals(grid->size());
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const int idx[3] = {i, j, k};
                    vals[grid->index(i, j, k)] = idx[axis] * dx;
                }
        return ScalarField(grid, std::move(vals));
    };

    if (spec.kind == "constant") {
        const double rho0 = param(spec.params, "rho", 0.0);
        const double vx = param(spec.params, "vx", 0.0);
        const double vy = param(spec.params, "vy", 0.0);
        const double vz = param(spec.params, "vz", 0.0);
        return FluidState(ScalarField::constant(grid, rho0),
                          VectorField(ScalarField::constant(grid, vx),
                                      ScalarField::constant(grid, vy),
                                      ScalarField::constant(grid, vz)),
                          0.0);
    }
    if (spec.kind == "shear") {
        // v = (f(x2), 0, 0), rho = 0: a steady solution of the system
        const double amp = param(spec.params, "amplitude", 0.1);
        const int mode = int(param(spec.params, "mode", 1.0));
        ScalarField x2 = coord_field(1);
        ScalarField v1(grid, amp * (double(mode) * x2.values()).sin());
        return FluidState(ScalarField::zero(grid),
                          VectorField(std::move(v1), ScalarField::zero(grid),
                                      ScalarField::zero(grid)),
                          0.0);
    }
    if (spec.kind == "acoustic_mode") {
        const double amp = param(spec.params, "amplitude", 1e-6);
        const int kx = int(param(spec.params, "kx", 1.0));
        const int ky = int(param(spec.params, "ky", 0.0));
        const int kz = int(param(spec.params, "kz", 0.0));
        Eigen::ArrayXd phase = kx * coord_field(0).values() +
                               ky * coord_field(1).values() +
                               kz * coord_field(2).values();
        return FluidState(ScalarField(grid, amp * phase.sin()),
                          VectorField::zero(grid), 0.0);
    }
    if (spec.kind == "random_band_limited") {
        const auto seed = std::uint64_t(param(spec.params, "seed", 1.0));
        const int band = int(param(spec.params, "band", 3.0));
        const double amp = require(spec.params, "amplitude");
        const double rho_amp = param(spec.params, "rho_amplitude", 0.5 * amp);
        return FluidState(random_band_limited(grid, seed, band, rho_amp, 0),
                          VectorField(random_band_limited(grid, seed, band, amp, 1),
                                      random_band_limited(grid, seed, band, amp, 2),
                                      random_band_limited(grid, seed, band, amp, 3)),
                          0.0);
    }
    if (spec.kind == "vortical_bump") {
        // v = curl(psi e3) with a compactly supported bump psi: div v = 0,
        // vorticity supported inside the box
        const double amp = param(spec.params, "amplitude", 0.1);
        const double radius = param(spec.params, "radius", 0.4 * grid->length());
        const double rho_amp = param(spec.params, "rho_amplitude", 0.0);
        const double c = 0.5 * grid->length();
        ScalarField psi = bump_field(grid, {c, c, c}, radius, amp);
        VectorField a(ScalarField::zero(grid), ScalarField::zero(grid), psi);
        VectorField v = curl(a);
        ScalarField rho = rho_amp == 0.0
                              ? ScalarField::zero(grid)
                              : bump_field(grid, {c, c, c}, radius, rho_amp);
        return FluidState(std::move(rho), std::move(v), 0.0);
    }
    throw ConfigError("unknown initial data kind: " + spec.kind);
}

}  // namespace ewb
