#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace opevo::fft {

// Thin wrapper around FFTW for power-of-two complex transforms.
// Forward:  out[j] = sum_l in[l] exp(-2*pi*i*j*l/n)   (unnormalized)
// Inverse:  out[l] = (1/n) sum_j in[j] exp(+2*pi*i*j*l/n)
//
// Plans are cached per (size, sign). Plan creation is serialized; execution
// through fftw_execute_dft on caller-owned buffers is thread-safe.

namespace detail {

class plan_cache {
public:
    static fftw_plan get(std::size_t n, int sign) {
        static plan_cache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_pair(n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        std::vector<std::complex<double>> tmp(n);
        auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, p);
        return p;
    }

private:
    plan_cache() = default;
    ~plan_cache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute(std::vector<std::complex<double>>& data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_cache::get(data.size(), sign), buf, buf);
}

} // namespace detail

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

inline void forward(std::vector<std::complex<double>>& data) {
    if (!is_pow2(data.size())) throw std::invalid_argument("fft: size must be a power of two");
    detail::execute(data, FFTW_FORWARD);
}

inline void inverse(std::vector<std::complex<double>>& data) {
    if (!is_pow2(data.size())) throw std::invalid_argument("fft: size must be a power of two");
    detail::execute(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& z : data) z *= scale;
}

} // namespace opevo::fft
