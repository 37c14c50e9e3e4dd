#include "ewb/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ewb {
namespace {

struct PlanSet {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    std::int64_t nreal = 0;
    std::int64_t ncplx = 0;
};

std::mutex g_mutex;
std::map<int, PlanSet>& plan_cache() {
    static std::map<int, PlanSet> cache;
    return cache;
}

PlanSet& plans_for(int n) {
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PlanSet ps;
    ps.nreal = std::int64_t(n) * n * n;
    ps.ncplx = std::int64_t(n / 2 + 1) * n * n;
    ps.real_buf = fftw_alloc_real(ps.nreal);
    ps.cplx_buf = fftw_alloc_complex(ps.ncplx);
    // x is the contiguous axis; FFTW is row-major so dims are (z, y, x).
    ps.fwd = fftw_plan_dft_r2c_3d(n, n, n, ps.real_buf, ps.cplx_buf, FFTW_ESTIMATE);
    ps.bwd = fftw_plan_dft_c2r_3d(n, n, n, ps.cplx_buf, ps.real_buf, FFTW_ESTIMATE);
    if (!ps.fwd || !ps.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, ps).first->second;
}

}  // namespace

Eigen::ArrayXcd fft_forward(int n, const Eigen::ArrayXd& values) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& ps = plans_for(n);
    std::copy(values.data(), values.data() + ps.nreal, ps.real_buf);
    fftw_execute(ps.fwd);
    Eigen::ArrayXcd spec(ps.ncplx);
    const double scale = 1.0 / double(ps.nreal);
    auto* src = reinterpret_cast<std::complex<double>*>(ps.cplx_buf);
    for (std::int64_t i = 0; i < ps.ncplx; ++i) spec[i] = src[i] * scale;
    return spec;
}

Eigen::ArrayXd fft_inverse(int n, const Eigen::ArrayXcd& spectrum) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& ps = plans_for(n);
    auto* dst = reinterpret_cast<std::complex<double>*>(ps.cplx_buf);
    std::copy(spectrum.data(), spectrum.data() + ps.ncplx, dst);
    fftw_execute(ps.bwd);
    Eigen::ArrayXd out(ps.nreal);
    std::copy(ps.real_buf, ps.real_buf + ps.nreal, out.data());
    return out;
}

namespace {

std::map<int, PlanSet>& plan_cache_2d() {
    static std::map<int, PlanSet> cache;
    return cache;
}

PlanSet& plans_for_2d(int m) {
    auto& cache = plan_cache_2d();
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    PlanSet ps;
    ps.nreal = std::int64_t(m) * m;
    ps.ncplx = std::int64_t(m / 2 + 1) * m;
    ps.real_buf = fftw_alloc_real(ps.nreal);
    ps.cplx_buf = fftw_alloc_complex(ps.ncplx);
    ps.fwd = fftw_plan_dft_r2c_2d(m, m, ps.real_buf, ps.cplx_buf, FFTW_ESTIMATE);
    ps.bwd = fftw_plan_dft_c2r_2d(m, m, ps.cplx_buf, ps.real_buf, FFTW_ESTIMATE);
    if (!ps.fwd || !ps.bwd) throw std::runtime_error("fftw 2d plan creation failed");
    return cache.emplace(m, ps).first->second;
}

}  // namespace

Eigen::ArrayXcd fft2_forward(int m, const Eigen::ArrayXd& values) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& ps = plans_for_2d(m);
    std::copy(values.data(), values.data() + ps.nreal, ps.real_buf);
    fftw_execute(ps.fwd);
    Eigen::ArrayXcd spec(ps.ncplx);
    const double scale = 1.0 / double(ps.nreal);
    auto* src = reinterpret_cast<std::complex<double>*>(ps.cplx_buf);
    for (std::int64_t i = 0; i < ps.ncplx; ++i) spec[i] = src[i] * scale;
    return spec;
}

Eigen::ArrayXd fft2_inverse(int m, const Eigen::ArrayXcd& spectrum) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& ps = plans_for_2d(m);
    auto* dst = reinterpret_cast<std::complex<double>*>(ps.cplx_buf);
    std::copy(spectrum.data(), spectrum.data() + ps.ncplx, dst);
    fftw_execute(ps.bwd);
    Eigen::ArrayXd out(ps.nreal);
    std::copy(ps.real_buf, ps.real_buf + ps.nreal, out.data());
    return out;
}

}  // namespace ewb
