#pragma once

#include "bohm/family.hpp"
#include "bohm/gauss_int.hpp"
#include "bohm/poly.hpp"

#include <span>
#include <string>
#include <vector>

namespace bohm {

/// Monic characteristic polynomial det(zI - H); coeffs[j] is the coefficient of z^j.
class CharPoly {
public:
    CharPoly() : coeffs_{GaussInt(1)} {}
    /// Throws InvalidArgument unless the leading coefficient is 1.
    explicit CharPoly(std::vector<GaussInt> coeffs);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const GaussInt> coeffs() const { return coeffs_; }
    [[nodiscard]] const GaussInt& operator[](std::size_t j) const { return coeffs_[j]; }
    [[nodiscard]] bool is_real() const;
    /// Real parts as an integer polynomial; throws InvalidArgument if any coefficient is complex.
    [[nodiscard]] poly::ZPoly to_zpoly() const;

    friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const CharPoly& a, const CharPoly& b) { return !(a == b); }

private:
    std::vector<GaussInt> coeffs_;
};

/// Human-readable form, highest degree first, e.g. "z^3+3*z^2+5*z+4".
std::string to_string(const CharPoly& p);

/// Polynomial recurrence over symbolic Q_0..Q_n (cross-validation path).
CharPoly charpoly_thm1(const HessMatrix& m);

/// Coefficient recurrence; the production path.
CharPoly charpoly_thm2(const HessMatrix& m);

inline CharPoly charpoly(const HessMatrix& m) { return charpoly_thm2(m); }

/// Laplace cofactor expansion of zI - m with memoized minors. Works for any
/// shape; n <= 12 or GuardExceeded.
CharPoly charpoly_oracle(const HessMatrix& m);
CharPoly charpoly_oracle(const DenseMatrix& m);

/// max over coefficients of max(|re|, |im|).
BigInt height(const CharPoly& p);

/// Coefficients of the characteristic polynomial of -m from those of m.
CharPoly negated_charpoly(const CharPoly& p);

/// p(m) evaluated exactly by Horner's rule.
DenseMatrix evaluate_at(const CharPoly& p, const DenseMatrix& m);

/// s^0, s^1, ..., s^(n-1) for a unit s.
std::vector<GaussInt> unit_powers(const GaussInt& s, int n);

} // namespace bohm
