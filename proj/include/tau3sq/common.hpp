#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tau3sq {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kPi3 = kPi * kPi * kPi;

// e(x) = exp(2*pi*i*x)
inline cplx e_of(double x) {
    double s, c;
#if defined(__GNUC__)
    __builtin_sincos(kTwoPi * x, &s, &c);
#else
    s = std::sin(kTwoPi * x);
    c = std::cos(kTwoPi * x);
#endif
    return {c, s};
}

// ---------------------------------------------------------------------------
// error signals
// ---------------------------------------------------------------------------

struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_invertible_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct even_modulus_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct precondition_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct nonconvergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct regime_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_order_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// compensated accumulation (Neumaier variant of Kahan summation)
// ---------------------------------------------------------------------------

struct kahan_sum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct kahan_csum {
    kahan_sum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

// ---------------------------------------------------------------------------
// deterministic counter-based RNG (SplitMix64)
// ---------------------------------------------------------------------------

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct det_rng {
    uint64_t state;
    explicit det_rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
    int64_t range(int64_t lo, int64_t hi) {  // inclusive bounds
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
};

// ---------------------------------------------------------------------------
// execution policy: OpenMP kernels with a serial reference path.
// reduce_ordered partitions [lo,hi) into fixed chunks and combines partials in
// ascending chunk order, so serial and parallel runs produce identical bits.
// ---------------------------------------------------------------------------

enum class Exec { serial, parallel };

int max_threads();
void set_thread_cap(int n);

template <class T, class Fn>
T reduce_ordered(Exec ex, int64_t lo, int64_t hi, int64_t chunk, Fn fn) {
    if (hi <= lo) return T{};
    if (chunk < 1) chunk = 1;
    int64_t nchunks = (hi - lo + chunk - 1) / chunk;
    std::vector<T> partial(static_cast<size_t>(nchunks));
    if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t ci = 0; ci < nchunks; ++ci) {
            int64_t a = lo + ci * chunk;
            int64_t b = std::min(hi, a + chunk);
            partial[static_cast<size_t>(ci)] = fn(a, b);
        }
    } else {
        for (int64_t ci = 0; ci < nchunks; ++ci) {
            int64_t a = lo + ci * chunk;
            int64_t b = std::min(hi, a + chunk);
            partial[static_cast<size_t>(ci)] = fn(a, b);
        }
    }
    T total{};
    for (auto& p : partial) total += p;
    return total;
}

template <class Fn>
void parallel_for(Exec ex, int64_t lo, int64_t hi, Fn fn) {
    if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t i = lo; i < hi; ++i) fn(i);
    } else {
        for (int64_t i = lo; i < hi; ++i) fn(i);
    }
}

}  // namespace tau3sq
