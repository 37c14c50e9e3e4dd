#ifndef EWB_FFT_HPP
#define EWB_FFT_HPP

#include <complex>

#include <Eigen/Dense>

namespace ewb {

/// 3D real-to-complex transform, x-fastest layout, normalized so that a
/// single mode exp(i k.x) has coefficient 1. Spectrum is the half space
/// kx >= 0 with dimensions (n/2+1, n, n), kx-fastest.
Eigen::ArrayXcd fft_forward(int n, const Eigen::ArrayXd& values);

/// Inverse of fft_forward (complex half-spectrum to real samples).
Eigen::ArrayXd fft_inverse(int n, const Eigen::ArrayXcd& spectrum);

/// 2D variants on an m x m grid (a-fastest), same conventions.
Eigen::ArrayXcd fft2_forward(int m, const Eigen::ArrayXd& values);
Eigen::ArrayXd fft2_inverse(int m, const Eigen::ArrayXcd& spectrum);

}  // namespace ewb

#endif
