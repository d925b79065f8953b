#pragma once

// Scalar types for the enumeration hot path. I64 and G64 are overflow-checked
// machine integers; on overflow they throw ScalarOverflow and the caller
// reruns on GaussInt.

#include "bohm/gauss_int.hpp"

#include <cstdint>
#include <stdexcept>

namespace bohm {

struct ScalarOverflow : std::overflow_error {
    ScalarOverflow() : std::overflow_error("64-bit coefficient overflow") {}
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
}
inline std::int64_t to_i64(const BigInt& v) {
    if (!v.fits_slong_p()) throw ScalarOverflow();
    return v.get_si();
}

} // namespace detail

/// Real checked 64-bit integer.
struct I64 {
    std::int64_t v = 0;

    static constexpr bool is_complex = false;
    static I64 from(const GaussInt& g) {
        if (!g.is_real()) throw std::invalid_argument("complex value in real scalar path");
        return {detail::to_i64(g.re)};
    }
    [[nodiscard]] GaussInt to_gauss() const { return GaussInt(v); }
    [[nodiscard]] bool is_zero() const { return v == 0; }

    friend I64 operator-(I64 a, I64 b) { return {detail::checked_sub(a.v, b.v)}; }
    friend bool operator==(I64 a, I64 b) { return a.v == b.v; }
};

/// acc -= w * x
inline void fused_sub(I64& acc, const I64& w, const I64& x) {
    acc.v = detail::checked_sub(acc.v, detail::checked_mul(w.v, x.v));
}

/// Complex checked 64-bit Gaussian integer.
struct G64 {
    std::int64_t re = 0;
    std::int64_t im = 0;

    static constexpr bool is_complex = true;
    static G64 from(const GaussInt& g) { return {detail::to_i64(g.re), detail::to_i64(g.im)}; }
    [[nodiscard]] GaussInt to_gauss() const { return GaussInt(BigInt(static_cast<long>(re)), BigInt(static_cast<long>(im))); }
    [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }

    friend G64 operator-(G64 a, G64 b) { return {detail::checked_sub(a.re, b.re), detail::checked_sub(a.im, b.im)}; }
    friend bool operator==(G64 a, G64 b) { return a.re == b.re && a.im == b.im; }
};

inline void fused_sub(G64& acc, const G64& w, const G64& x) {
    using namespace detail;
    std::int64_t r = checked_sub(checked_mul(w.re, x.re), checked_mul(w.im, x.im));
    std::int64_t i = checked_add(checked_mul(w.re, x.im), checked_mul(w.im, x.re));
    acc.re = checked_sub(acc.re, r);
    acc.im = checked_sub(acc.im, i);
}

/// Arbitrary precision; never overflows.
struct BigScalar {
    GaussInt g;

    static constexpr bool is_complex = true;
    static BigScalar from(const GaussInt& x) { return {x}; }
    [[nodiscard]] const GaussInt& to_gauss() const { return g; }
    [[nodiscard]] bool is_zero() const { return g.is_zero(); }

    friend BigScalar operator-(const BigScalar& a, const BigScalar& b) { return {a.g - b.g}; }
    friend bool operator==(const BigScalar& a, const BigScalar& b) { return a.g == b.g; }
};

inline void fused_sub(BigScalar& acc, const BigScalar& w, const BigScalar& x) {
    if (w.g.is_zero() || x.g.is_zero()) return;
    acc.g -= w.g * x.g;
}

} // namespace bohm
