#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

namespace bohm {

using BigInt = mpz_class;

/// Exact Gaussian integer re + im*i with arbitrary-precision components.
struct GaussInt {
    BigInt re;
    BigInt im;

    GaussInt() = default;
    GaussInt(long r) : re(r), im(0) {} // NOLINT(google-explicit-constructor)
    GaussInt(BigInt r, BigInt i = 0) : re(std::move(r)), im(std::move(i)) {} // NOLINT
    GaussInt(long r, long i) : re(r), im(i) {}

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] BigInt norm() const { return re * re + im * im; }
    [[nodiscard]] bool is_unit() const { return norm() == 1; }
    [[nodiscard]] GaussInt conj() const { return {re, -im}; }

    /// max(|re|, |im|)
    [[nodiscard]] BigInt max_component() const;

    [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt& operator+=(const GaussInt& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussInt& operator-=(const GaussInt& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussInt& operator*=(const GaussInt& o);

    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
};

/// Exact quotient a / b; throws InvalidArgument when b does not divide a in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b);

/// Lexicographic by (re, im); used for canonical ordering only.
int compare(const GaussInt& a, const GaussInt& b);

/// Canonical text: "a" when real, otherwise "a+bi" / "a-bi" with an explicit b.
std::string to_string(const GaussInt& g);

/// Accepts the canonical form plus the shorthands "i", "-i", "+i", "bi", "a+i", "a-i".
GaussInt parse_gauss_int(std::string_view text);

/// Integer power of a Gaussian integer (exponent >= 0).
GaussInt pow(const GaussInt& g, unsigned e);

} // namespace bohm
