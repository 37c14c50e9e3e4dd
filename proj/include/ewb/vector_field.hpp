#ifndef EWB_VECTOR_FIELD_HPP
#define EWB_VECTOR_FIELD_HPP

#include <array>

#include "ewb/scalar_field.hpp"

namespace ewb {

/// Three scalar components v^1, v^2, v^3 on one grid.
class VectorField {
  public:
    VectorField() = default;
    VectorField(ScalarField c1, ScalarField c2, ScalarField c3)
        : comp_{std::move(c1), std::move(c2), std::move(c3)} {
        if (!(comp_[0].grid() == comp_[1].grid()) ||
            !(comp_[0].grid() == comp_[2].grid()))
            throw Error("VectorField: components on different grids");
    }

    static VectorField zero(GridPtr grid) {
        return VectorField(ScalarField::zero(grid), ScalarField::zero(grid),
                           ScalarField::zero(grid));
    }

    const ScalarField& operator[](int i) const { return comp_[i]; }
    const Grid& grid() const { return comp_[0].grid(); }
    GridPtr grid_ptr() const { return comp_[0].grid_ptr(); }
    bool empty() const { return comp_[0].empty(); }

    double max_abs() const {
        return std::max({comp_[0].max_abs(), comp_[1].max_abs(), comp_[2].max_abs()});
    }
    double l2_norm() const {
        double s = 0.0;
        for (const auto& c : comp_) s += c.l2_norm() * c.l2_norm();
        return std::sqrt(s);
    }
    bool all_finite() const {
        return comp_[0].all_finite() && comp_[1].all_finite() && comp_[2].all_finite();
    }

  private:
    std::array<ScalarField, 3> comp_;
};

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    return VectorField(a[0] + b[0], a[1] + b[1], a[2] + b[2]);
}
inline VectorField operator-(const VectorField& a, const VectorField& b) {
    return VectorField(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}
inline VectorField operator*(double c, const VectorField& a) {
    return VectorField(c * a[0], c * a[1], c * a[2]);
}
inline VectorField operator*(const ScalarField& s, const VectorField& a) {
    return VectorField(s * a[0], s * a[1], s * a[2]);
}

/// Pointwise dot product a.b.
inline ScalarField dot(const VectorField& a, const VectorField& b) {
    return ScalarField(a.grid_ptr(), a[0].values() * b[0].values() +
                                         a[1].values() * b[1].values() +
                                         a[2].values() * b[2].values());
}

/// Pointwise cross product (a x b)^i = eps^{ijk} a_j b_k.
inline VectorField cross(const VectorField& a, const VectorField& b) {
    return VectorField(
        ScalarField(a.grid_ptr(), a[1].values() * b[2].values() - a[2].values() * b[1].values()),
        ScalarField(a.grid_ptr(), a[2].values() * b[0].values() - a[0].values() * b[2].values()),
        ScalarField(a.grid_ptr(), a[0].values() * b[1].values() - a[1].values() * b[0].values()));
}

}  // namespace ewb

#endif
