#pragma once

#include "bohm/charpoly.hpp"
#include "bohm/cpdb.hpp"
#include "bohm/family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bohm {

/// All roots strictly in the open left half plane, decided exactly: positive
/// coefficients, then positive leading principal minors of the Hurwitz matrix
/// by fraction-free elimination. Throws InvalidArgument for complex input.
bool is_stable_type1(const CharPoly& p);

/// Leading principal minors Delta_1..Delta_n of the Hurwitz matrix.
std::vector<BigInt> hurwitz_minors(const CharPoly& p);

/// All roots on the imaginary axis, decided exactly (even-part structure plus
/// a Sturm count on the squarefree part). Throws InvalidArgument for complex input.
bool is_neutral(const CharPoly& p);

/// p == z^n
bool is_nilpotent(const CharPoly& p);

/// Constant coefficient is zero.
bool is_singular(const CharPoly& p);

/// A* A == A A*, exactly.
bool is_normal(const DenseMatrix& a);
bool is_normal(const HessMatrix& m);

enum class NormalShapeKind { Symmetric, WSkewSymmetric, WSkewCirculant, Other };

struct NormalShape {
    NormalShapeKind kind = NormalShapeKind::Other;
    GaussInt w; // the scaling unit for the two w-patterns

    friend bool operator==(const NormalShape& a, const NormalShape& b) { return a.kind == b.kind && a.w == b.w; }
};

std::string to_string(const NormalShape& s);

/// Matches the zero-diagonal normal patterns: the superdiagonal filled with one
/// unit w (symmetric when w equals the subdiagonal value), or a single corner
/// entry h_{1,n} = w. With assert_normal, throws InvalidArgument when m is not normal.
NormalShape classify_normal_shape(const HessMatrix& m, bool assert_normal = false);

/// Every normal member of an upper Hessenberg family, found by an exhaustive
/// row-by-row search. After rows 1..r are fixed, the entries C_{i,r}, i <= r, of
/// C = A*A - AA* are fully determined, so branches with C_{i,r} != 0 are cut.
std::vector<HessMatrix> find_normal_matrices(const FamilySpec& spec);

/// Minimal polynomial degree equals n. Computes the rank of the vectorized
/// powers I, A, ..., A^n by fraction-free elimination over Z[i]. n <= 8.
bool is_nonderogatory(const DenseMatrix& a);
bool is_nonderogatory(const HessMatrix& m);

/// Degree of the minimal polynomial (same guard).
int minimal_polynomial_degree(const DenseMatrix& a);

/// trace(m) < 0. Only matrices passing this can be Type I stable. Real populations only.
bool trace_prefilter(const HessMatrix& m);

/// Per-family classification tallies, one row of a summary table.
struct ClassReport {
    int n = 0;
    std::string family;
    BigInt matrices = 0;
    std::size_t cpolys = 0;
    std::size_t neutral_polys = 0;
    BigInt neutral_matrices = 0;
    std::size_t stable_polys = 0;
    BigInt stable_matrices = 0;
    std::size_t nilpotent_polys = 0;
    BigInt nilpotent_matrices = 0;
    std::size_t singular_polys = 0;
    BigInt singular_matrices = 0;
    /// Stability and neutrality are only decided for real coefficients.
    bool real_coefficients = true;
    /// Filled by the spectra module on request.
    std::optional<std::size_t> distinct_real_eigs;
};

/// Matrix tallies weight each polynomial by its database multiplicity.
ClassReport classify_database(const Cpdb& db);

/// Aligned plain-text table and CSV renderings of reports.
std::string format_report_table(const std::vector<ClassReport>& rows);
std::string format_report_csv(const std::vector<ClassReport>& rows);

} // namespace bohm
