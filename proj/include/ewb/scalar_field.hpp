#ifndef EWB_SCALAR_FIELD_HPP
#define EWB_SCALAR_FIELD_HPP

#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "ewb/fft.hpp"
#include "ewb/grid.hpp"

namespace ewb {

/// Real scalar field on a periodic grid. Immutable after construction;
/// the spectrum is cached lazily and shared between copies, so fields are
/// cheap to copy and safe to use from several threads.
class ScalarField {
  public:
    ScalarField() = default;

    ScalarField(GridPtr grid, Eigen::ArrayXd values)
        : grid_(std::move(grid)),
          values_(std::make_shared<const Eigen::ArrayXd>(std::move(values))),
          cache_(std::make_shared<Cache>()) {
        if (values_->size() != grid_->size())
            throw Error("ScalarField: value count does not match grid");
    }

    static ScalarField from_spectrum(GridPtr grid, Eigen::ArrayXcd spec) {
        if (spec.size() != grid->spec_size())
            throw Error("ScalarField: spectrum size does not match grid");
        Eigen::ArrayXd vals = fft_inverse(grid->n(), spec);
        ScalarField f(std::move(grid), std::move(vals));
        f.cache_->spec = std::make_shared<const Eigen::ArrayXcd>(std::move(spec));
        return f;
    }

    static ScalarField zero(GridPtr grid) {
        return ScalarField(grid, Eigen::ArrayXd::Zero(grid->size()));
    }

    static ScalarField constant(GridPtr grid, double c) {
        return ScalarField(grid, Eigen::ArrayXd::Constant(grid->size(), c));
    }

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    const Eigen::ArrayXd& values() const { return *values_; }
    bool empty() const { return !grid_; }

    /// DFT coefficients, half spectrum, single-mode amplitude convention.
    const Eigen::ArrayXcd& spectrum() const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (!cache_->spec)
            cache_->spec = std::make_shared<const Eigen::ArrayXcd>(
                fft_forward(grid_->n(), *values_));
        return *cache_->spec;
    }

    double mean() const { return values_->mean(); }
    double max_abs() const { return values_->abs().maxCoeff(); }
    bool all_finite() const { return values_->allFinite(); }

    /// L2 norm with the volume element, i.e. sqrt(int |f|^2 dx).
    double l2_norm() const {
        const double cell = std::pow(grid_->dx(), 3);
        return std::sqrt((values_->square() * cell).sum());
    }

  private:
    struct Cache {
        std::mutex mutex;
        std::shared_ptr<const Eigen::ArrayXcd> spec;
    };

    GridPtr grid_;
    std::shared_ptr<const Eigen::ArrayXd> values_;
    std::shared_ptr<Cache> cache_;
};

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return ScalarField(a.grid_ptr(), a.values() + b.values());
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return ScalarField(a.grid_ptr(), a.values() - b.values());
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return ScalarField(a.grid_ptr(), a.values() * b.values());
}
inline ScalarField operator*(double c, const ScalarField& a) {
    return ScalarField(a.grid_ptr(), c * a.values());
}
inline ScalarField operator-(const ScalarField& a) {
    return ScalarField(a.grid_ptr(), -a.values());
}

}  // namespace ewb

#endif
