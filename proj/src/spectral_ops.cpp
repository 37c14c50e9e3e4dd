#include "ewb/spectral_ops.hpp"

#include <cmath>

namespace ewb {

namespace {

/// Iterate the half spectrum, calling fn(index, kx, ky, kz) with physical
/// wavenumbers. The kx = n/2 column is the unpaired Nyquist plane.
template <typename F>
void for_each_mode(const Grid& g, F&& fn) {
    const int n = g.n();
    const int nx = n / 2 + 1;
    const double k0 = g.k0();
    std::int64_t idx = 0;
    for (int kz = 0; kz < n; ++kz) {
        const double fz = k0 * g.signed_mode(kz);
        for (int ky = 0; ky < n; ++ky) {
            const double fy = k0 * g.signed_mode(ky);
            for (int kx = 0; kx < nx; ++kx, ++idx) {
                fn(idx, k0 * kx, fy, fz);
            }
        }
    }
}

ScalarField map_spectrum(const ScalarField& f,
                         const std::function<std::complex<double>(
                             std::complex<double>, double, double, double)>& fn) {
    const Eigen::ArrayXcd& in = f.spectrum();
    Eigen::ArrayXcd out(in.size());
    for_each_mode(f.grid(), [&](std::int64_t i, double kx, double ky, double kz) {
        out[i] = fn(in[i], kx, ky, kz);
    });
    return ScalarField::from_spectrum(f.grid_ptr(), std::move(out));
}

bool is_nyquist(const Grid& g, double k, double k0) {
    return std::abs(std::abs(k) - k0 * g.nyquist()) < 0.5 * k0;
}

}  // namespace

ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<double(double, double, double)>& m) {
    return map_spectrum(f, [&](std::complex<double> c, double kx, double ky, double kz) {
        return c * m(kx, ky, kz);
    });
}

ScalarField derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    const double k0 = g.k0();
    return map_spectrum(f, [&](std::complex<double> c, double kx, double ky, double kz) {
        const double k = axis == 0 ? kx : (axis == 1 ? ky : kz);
        // the unpaired Nyquist mode has no well-defined odd derivative
        if (is_nyquist(g, k, k0)) return std::complex<double>(0.0, 0.0);
        return std::complex<double>(0.0, k) * c;
    });
}

VectorField gradient(const ScalarField& f) {
    return VectorField(derivative(f, 0), derivative(f, 1), derivative(f, 2));
}

ScalarField divergence(const VectorField& u) {
    return ScalarField(u.grid_ptr(), derivative(u[0], 0).values() +
                                         derivative(u[1], 1).values() +
                                         derivative(u[2], 2).values());
}

VectorField curl(const VectorField& u) {
    return VectorField(derivative(u[2], 1) - derivative(u[1], 2),
                       derivative(u[0], 2) - derivative(u[2], 0),
                       derivative(u[1], 0) - derivative(u[0], 1));
}

ScalarField laplacian(const ScalarField& f) {
    return map_spectrum(f, [](std::complex<double> c, double kx, double ky, double kz) {
        return -(kx * kx + ky * ky + kz * kz) * c;
    });
}

VectorField laplacian(const VectorField& u) {
    return VectorField(laplacian(u[0]), laplacian(u[1]), laplacian(u[2]));
}

ScalarField solve_neg_laplacian(const ScalarField& f, double mean_tol) {
    const double m = std::abs(f.mean());
    const double scale = std::max(1.0, f.max_abs());
    if (m > mean_tol * scale)
        throw NonZeroMean("solve_neg_laplacian: source mean " + std::to_string(m) +
                          " violates torus solvability");
    return map_spectrum(f, [](std::complex<double> c, double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) return std::complex<double>(0.0, 0.0);
        return c / k2;
    });
}

ScalarField fractional_power(const ScalarField& f, double alpha) {
    if (alpha < 0.0) {
        const double m = std::abs(f.mean());
        if (m > 1e-12 * std::max(1.0, f.max_abs()))
            throw NegativePowerOnMean("fractional_power: negative power on a field "
                                      "with nonzero mean");
    }
    return map_spectrum(f, [alpha](std::complex<double> c, double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) return std::complex<double>(0.0, 0.0);
        return c * std::pow(k2, 0.5 * alpha);
    });
}

ScalarField bessel_potential(const ScalarField& f, double k) {
    return map_spectrum(f, [k](std::complex<double> c, double kx, double ky, double kz) {
        return c * std::pow(1.0 + kx * kx + ky * ky + kz * kz, 0.5 * k);
    });
}

double lp_profile(double s) {
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double a = psi(2.0 - s);
    const double b = psi(s - 1.0);
    return a / (a + b);
}

int lp_max_shell(const Grid& g) {
    // largest j with 2^{j+1} <= Nyquist
    int j = -1;
    while (std::pow(2.0, j + 2) <= double(g.nyquist()) + 1e-12) ++j;
    return j;
}

namespace {
ScalarField lp_apply(const ScalarField& f, const std::function<double(double)>& radial) {
    return map_spectrum(f, [&](std::complex<double> c, double kx, double ky, double kz) {
        return c * radial(std::sqrt(kx * kx + ky * ky + kz * kz));
    });
}
}  // namespace

ScalarField lp_project(const ScalarField& f, int j) {
    const Grid& g = f.grid();
    if (std::pow(2.0, j + 1) > double(g.nyquist()) * g.k0() + 1e-12)
        throw OutOfBand("lp_project: shell 2^" + std::to_string(j) +
                        " exceeds the Nyquist band");
    const double s1 = std::pow(2.0, j);
    const double s0 = std::pow(2.0, j - 1);
    return lp_apply(f, [s0, s1](double r) {
        return lp_profile(r / s1) - lp_profile(r / s0);
    });
}

ScalarField lp_low(const ScalarField& f, int j) {
    const double s = std::pow(2.0, j - 1);
    return lp_apply(f, [s](double r) { return lp_profile(r / s); });
}

ScalarField lp_top_block(const ScalarField& f) {
    const double s = std::pow(2.0, lp_max_shell(f.grid()));
    return lp_apply(f, [s](double r) { return 1.0 - lp_profile(r / s); });
}

ScalarField dealias(const ScalarField& f) {
    const Grid& g = f.grid();
    const double kc = g.dealias_cutoff() * g.k0() + 1e-9;
    return map_spectrum(f, [kc](std::complex<double> c, double kx, double ky, double kz) {
        if (std::abs(kx) > kc || std::abs(ky) > kc || std::abs(kz) > kc)
            return std::complex<double>(0.0, 0.0);
        return c;
    });
}

VectorField dealias(const VectorField& u) {
    return VectorField(dealias(u[0]), dealias(u[1]), dealias(u[2]));
}

ScalarField multiply_dealias(const ScalarField& a, const ScalarField& b) {
    return dealias(a * b);
}

double l2_norm_spectral(const ScalarField& f) {
    const Grid& g = f.grid();
    const Eigen::ArrayXcd& s = f.spectrum();
    const int nx = g.n() / 2 + 1;
    double sum = 0.0;
    std::int64_t idx = 0;
    for (int kz = 0; kz < g.n(); ++kz)
        for (int ky = 0; ky < g.n(); ++ky)
            for (int kx = 0; kx < nx; ++kx, ++idx) {
                const double w = (kx == 0 || kx == g.n() / 2) ? 1.0 : 2.0;
                sum += w * std::norm(s[idx]);
            }
    return std::sqrt(sum * std::pow(g.length(), 3));
}

double evaluate_at(const ScalarField& f, double x, double y, double z) {
    const Grid& g = f.grid();
    const Eigen::ArrayXcd& s = f.spectrum();
    const int n = g.n();
    const int nx = n / 2 + 1;
    const double k0 = g.k0();

    // per-axis phase tables
    Eigen::ArrayXcd ex(nx), ey(n), ez(n);
    for (int kx = 0; kx < nx; ++kx)
        ex[kx] = std::polar(1.0, k0 * kx * x);
    for (int m = 0; m < n; ++m) {
        ey[m] = std::polar(1.0, k0 * g.signed_mode(m) * y);
        ez[m] = std::polar(1.0, k0 * g.signed_mode(m) * z);
    }

    std::complex<double> acc(0.0, 0.0);
    std::int64_t idx = 0;
    for (int kz = 0; kz < n; ++kz) {
        for (int ky = 0; ky < n; ++ky) {
            const std::complex<double> pyz = ey[ky] * ez[kz];
            std::complex<double> row(0.0, 0.0);
            for (int kx = 0; kx < nx; ++kx, ++idx) {
                // weight 2 accounts for the conjugate half; Re taken at the end
                row += (kx == 0 || kx == n / 2) ? s[idx] * ex[kx]
                                                : 2.0 * s[idx] * ex[kx];
            }
            acc += row * pyz;
        }
    }
    return acc.real();
}

}  // namespace ewb
