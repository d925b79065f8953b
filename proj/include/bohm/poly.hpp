#pragma once

// Dense univariate polynomial helpers. Coefficient vectors store the constant
// term first; the zero polynomial is the empty vector.

#include "bohm/gauss_int.hpp"

#include <vector>

namespace bohm::poly {

using GPoly = std::vector<GaussInt>;
using ZPoly = std::vector<BigInt>;

void trim(GPoly& p);
void trim(ZPoly& p);

/// -1 for the zero polynomial.
inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }
inline int degree(const GPoly& p) { return static_cast<int>(p.size()) - 1; }

GPoly add(const GPoly& a, const GPoly& b);
GPoly sub(const GPoly& a, const GPoly& b);
GPoly mul(const GPoly& a, const GPoly& b);
GPoly scale(const GPoly& a, const GaussInt& c);

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& a);

/// gcd of the coefficients, nonnegative.
BigInt content(const ZPoly& a);
/// a / content(a) with positive leading coefficient.
ZPoly primitive_part(const ZPoly& a);

/// lc(b)^(deg a - deg b + 1) * a mod b. Requires b != 0.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b);

/// Exact quotient a / b in Z[x]; throws InvalidArgument if b does not divide a.
ZPoly divexact(const ZPoly& a, const ZPoly& b);

/// Primitive gcd with positive leading coefficient (primitive PRS).
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// a / gcd(a, a'), primitive, positive leading coefficient.
ZPoly squarefree_part(const ZPoly& a);

/// Number of distinct real roots in the open interval (-inf, 0) of a
/// squarefree polynomial with p(0) != 0, by Sturm sequence.
int count_negative_real_roots(const ZPoly& squarefree);

/// Number of distinct real roots of a squarefree polynomial, by Sturm sequence.
int count_real_roots(const ZPoly& squarefree);

} // namespace bohm::poly
