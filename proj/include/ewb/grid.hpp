#ifndef EWB_GRID_HPP
#define EWB_GRID_HPP

#include <cmath>
#include <cstdint>
#include <memory>

#include "ewb/errors.hpp"

namespace ewb {

/// Uniform periodic grid on [0, length)^3, x-fastest storage order.
/// Wavenumbers are integer multiples of 2*pi/length; for the default
/// length 2*pi they are the integers in [-n/2, n/2).
class Grid {
  public:
    Grid(int n, double length = 2.0 * M_PI, double dealias_fraction = 2.0 / 3.0)
        : n_(n), length_(length), dealias_fraction_(dealias_fraction) {
        if (n < 8 || n % 2 != 0) throw Error("Grid: n must be even and >= 8");
        if (!fft_friendly(n)) throw Error("Grid: n must factor into 2,3,5");
        if (!(length > 0.0)) throw Error("Grid: length must be positive");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw Error("Grid: dealias_fraction must lie in (0,1]");
    }

    int n() const { return n_; }
    double length() const { return length_; }
    double dealias_fraction() const { return dealias_fraction_; }

    std::int64_t size() const { return std::int64_t(n_) * n_ * n_; }
    std::int64_t spec_size() const { return std::int64_t(n_ / 2 + 1) * n_ * n_; }

    double dx() const { return length_ / n_; }
    /// Base wavenumber 2*pi/length.
    double k0() const { return 2.0 * M_PI / length_; }
    /// Largest resolved integer mode index per axis.
    int nyquist() const { return n_ / 2; }
    /// Integer cutoff of the dealias rule (modes with |k| > cutoff are zeroed).
    int dealias_cutoff() const {
        return static_cast<int>(std::floor(nyquist() * dealias_fraction_));
    }

    /// Signed integer wavenumber for storage index along a full axis.
    int signed_mode(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }

    std::int64_t index(int i, int j, int k) const {
        return std::int64_t(i) + std::int64_t(n_) * (j + std::int64_t(n_) * k);
    }

    bool operator==(const Grid& o) const {
        return n_ == o.n_ && length_ == o.length_ &&
               dealias_fraction_ == o.dealias_fraction_;
    }

  private:
    static bool fft_friendly(int n) {
        for (int p : {2, 3, 5})
            while (n % p == 0) n /= p;
        return n == 1;
    }

    int n_;
    double length_;
    double dealias_fraction_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int n, double length = 2.0 * M_PI,
                         double dealias_fraction = 2.0 / 3.0) {
    return std::make_shared<const Grid>(n, length, dealias_fraction);
}

}  // namespace ewb

#endif
