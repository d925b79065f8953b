#pragma once

#include "bohm/charpoly.hpp"
#include "bohm/cpdb.hpp"
#include "bohm/enumerate.hpp"

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bohm {

using Complex = std::complex<double>;

struct Root {
    Complex value;
    int multiplicity = 1;
    int factor = -1; // index into RootSet::factors
};

/// Numerical roots with exact multiplicities. Real roots of real polynomials
/// have an imaginary part of exactly zero; Gaussian-integer roots are exact.
struct RootSet {
    std::vector<Root> roots;
    /// The squarefree factors the roots were solved from (z for a zero root).
    std::vector<poly::GPoly> factors;
    [[nodiscard]] int degree() const;
    [[nodiscard]] double spectral_radius() const;
    [[nodiscard]] double max_real_part() const;
};

template <class T>
struct SquarefreeFactor {
    std::vector<T> factor; // constant term first, monic
    int multiplicity = 1;
};

/// Yun decomposition p = prod f_i^i with each f_i squarefree and pairwise
/// coprime; factors of degree 0 are omitted. Works over Z and Z[i].
std::vector<SquarefreeFactor<BigInt>> squarefree_decompose(const poly::ZPoly& p);
std::vector<SquarefreeFactor<GaussInt>> squarefree_decompose(const poly::GPoly& p);
std::vector<std::pair<CharPoly, int>> squarefree_decompose(const CharPoly& p);

/// Aberth-Ehrlich simultaneous iteration followed by two Newton steps.
/// Intended for squarefree input with a nonzero constant term.
/// Throws ConvergenceError after `max_iterations`.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iterations = 1000);

/// Roots of p. Zero roots are taken exactly; every squarefree factor is solved
/// separately so each root is simple where it is polished.
RootSet roots(const CharPoly& p);

/// Roots of every record, in canonical record order, solved on `threads` workers.
std::vector<std::pair<const CpdbRecord*, RootSet>> solve_database(const Cpdb& db, unsigned threads = 1);

/// Set of distinct eigenvalues. Candidates within `tol` (max-norm, found
/// through a grid of spacing `tol` and its neighbouring cells) are identified.
/// With exact identification, a candidate pair is merged only when both values
/// approximate the same root of the exact gcd of their squarefree factors, so
/// distinct algebraic numbers closer than `tol` stay apart.
class EigenvalueSet {
public:
    explicit EigenvalueSet(double tol = 1e-8, bool exact = true) : tol_(tol), exact_(exact) {}
    /// `factor` is a squarefree polynomial with z among its roots. Returns the
    /// representative and whether z was new.
    std::pair<Complex, bool> insert(Complex z, const poly::GPoly& factor);
    bool contains(Complex z, const poly::GPoly& factor);
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::vector<Complex> values() const;

private:
    struct Entry {
        Complex z;
        int factor;
    };
    struct CellHash {
        std::size_t operator()(const std::pair<long long, long long>& c) const noexcept {
            return std::hash<long long>()(c.first * 1000003LL ^ c.second);
        }
    };
    [[nodiscard]] std::pair<long long, long long> cell(Complex z) const;
    int intern(const poly::GPoly& f);
    bool same(const Entry& e, Complex z, int factor);
    const Entry* find(Complex z, int factor);
    double tol_;
    bool exact_;
    std::vector<Entry> entries_;
    std::unordered_map<std::pair<long long, long long>, std::vector<std::size_t>, CellHash> cells_;
    std::vector<poly::GPoly> factors_;
    std::unordered_map<std::string, int> factor_ids_;
    std::map<std::pair<int, int>, std::vector<Complex>> gcd_roots_;
};

/// counts[k] = distinct eigenvalues occurring with multiplicity k (k = 1..n);
/// counts[0] is unused.
struct MultiplicityTable {
    std::vector<std::size_t> counts;
    friend bool operator==(const MultiplicityTable& a, const MultiplicityTable& b) { return a.counts == b.counts; }
};

/// Everything the spectral tables need, from one pass over a database.
struct SpectrumSummary {
    /// Per multiplicity class, each class deduplicated separately.
    MultiplicityTable by_class;
    /// Distinct eigenvalues over the whole family (all classes together).
    std::size_t distinct_eigenvalues = 0;
    std::size_t distinct_real = 0;
    /// Eigenvalues seen with multiplicity > 1 that never occur as simple roots.
    std::vector<Complex> multiple_only;
};

struct SpectraOptions {
    double tol = 1e-8;
    /// Confirm grid matches by an exact gcd (see EigenvalueSet).
    bool exact_identification = true;
    unsigned threads = 1;
};

SpectrumSummary summarize_spectrum(const Cpdb& db, const SpectraOptions& opts = {});

MultiplicityTable multiplicity_table(const Cpdb& db, const SpectraOptions& opts = {});
MultiplicityTable multiplicity_table(const FamilySpec& spec, const EnumOptions& enum_opts = {});

/// Distinct eigenvalues with |Im| <= tol.
std::size_t distinct_real_eigs(const Cpdb& db, const SpectraOptions& opts = {});
std::size_t distinct_real_eigs(const FamilySpec& spec, const EnumOptions& enum_opts = {});

enum class RealPartFilter { All, StableOnly };

/// Largest real part over the family; empty when the filter selects nothing.
std::optional<double> max_real_part(const Cpdb& db, RealPartFilter filter);
std::optional<double> max_real_part(const FamilySpec& spec, RealPartFilter filter, const EnumOptions& enum_opts = {});

/// CSV rows "re,im,multiplicity,count": every deduplicated (eigenvalue,
/// multiplicity) pair with the number of matrices having it.
void write_eigenvalue_csv(const Cpdb& db, std::ostream& os, const SpectraOptions& opts = {});

} // namespace bohm
