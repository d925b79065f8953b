#pragma once

#include "bohm/gauss_int.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bohm {

/// Ordered set of permitted entries. Elements are pairwise distinct and the
/// order given at construction is kept (it fixes the enumeration order).
class Population {
public:
    explicit Population(std::vector<GaussInt> elements);

    [[nodiscard]] std::span<const GaussInt> elements() const { return elements_; }
    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] const GaussInt& operator[](std::size_t k) const { return elements_[k]; }
    [[nodiscard]] bool contains(const GaussInt& g) const;
    [[nodiscard]] bool contains_zero() const { return contains_zero_; }
    [[nodiscard]] bool is_real() const;
    /// Every nonzero element has norm 1.
    [[nodiscard]] bool nonzero_are_units() const;
    /// True when unit * P == P.
    [[nodiscard]] bool invariant_under(const GaussInt& unit) const;

    friend bool operator==(const Population& a, const Population& b) { return a.elements_ == b.elements_; }

private:
    std::vector<GaussInt> elements_;
    bool contains_zero_ = false;
};

/// Comma-separated tokens, e.g. "-1,0,1" or "0,i,-i".
Population parse_population(std::string_view text);
std::string to_string(const Population& p);

enum class Shape { UpperHessenberg, General };

/// A Bohemian family: n x n matrices with free entries drawn from a population.
struct FamilySpec {
    int n = 1;
    Population population{{GaussInt(0)}};
    GaussInt subdiag{1};
    bool zero_diagonal = false;
    Shape shape = Shape::UpperHessenberg;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;

    /// Number of entries chosen from the population.
    [[nodiscard]] std::size_t free_entry_count() const;
    /// Number of stored entries (n(n+1)/2 for Hessenberg, n^2 for general).
    [[nodiscard]] std::size_t storage_size() const;
    /// Storage slot of the k-th free entry in enumeration order.
    [[nodiscard]] std::vector<std::size_t> free_slots() const;

    friend bool operator==(const FamilySpec& a, const FamilySpec& b) {
        return a.n == b.n && a.population == b.population && a.subdiag == b.subdiag &&
               a.zero_diagonal == b.zero_diagonal && a.shape == b.shape;
    }
};

FamilySpec make_hessenberg(int n, std::string_view population, long subdiag = 1, bool zero_diagonal = false);
FamilySpec make_general(int n, std::string_view population);

/// "n=<n> pop=<population> s=<unit> diag=<free|zero> shape=<hessenberg|general>"
std::string to_string(const FamilySpec& spec);
FamilySpec parse_family_spec(std::string_view text);

/// |P| raised to the number of free entries.
BigInt family_size(const FamilySpec& spec);

/// Slot of h_{i,j} (1-based, i <= j) in the column-major upper storage.
constexpr std::size_t upper_slot(int i, int j) {
    return static_cast<std::size_t>((j - 1) * j / 2 + (i - 1));
}

/// One member of a family. For upper Hessenberg shape only h_{i,j}, i <= j, are
/// stored; the subdiagonal is implied by the family.
class HessMatrix {
public:
    /// `stored` has storage_size() entries in column-major order.
    HessMatrix(std::shared_ptr<const FamilySpec> spec, std::vector<GaussInt> stored);

    /// Builds a member from per-free-entry population indices.
    static HessMatrix from_choices(std::shared_ptr<const FamilySpec> spec, std::span<const std::size_t> choices);

    [[nodiscard]] const FamilySpec& spec() const { return *spec_; }
    [[nodiscard]] const std::shared_ptr<const FamilySpec>& spec_ptr() const { return spec_; }
    [[nodiscard]] int n() const { return spec_->n; }
    [[nodiscard]] std::span<const GaussInt> stored() const { return stored_; }

    /// 1-based access; throws std::out_of_range.
    [[nodiscard]] GaussInt entry(int i, int j) const;

    friend bool operator==(const HessMatrix& a, const HessMatrix& b) {
        return *a.spec_ == *b.spec_ && a.stored_ == b.stored_;
    }

private:
    std::shared_ptr<const FamilySpec> spec_;
    std::vector<GaussInt> stored_;
};

inline GaussInt matrix_entry(const HessMatrix& m, int i, int j) { return m.entry(i, j); }

/// Dense row-major n x n matrix over Z[i]; used by the exact classifiers.
struct DenseMatrix {
    int n = 0;
    std::vector<GaussInt> a;

    DenseMatrix() = default;
    explicit DenseMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}
    static DenseMatrix identity(int dim);

    GaussInt& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const GaussInt& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    [[nodiscard]] DenseMatrix conjugate_transpose() const;
    friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);
    friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y);
    friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) { return x.n == y.n && x.a == y.a; }
};

DenseMatrix to_dense(const HessMatrix& m);

enum class SubdiagTarget { PlusOne, MinusOne };

/// Diagonal similarity D m D^{-1} with d_1 = 1, d_{k+1} = d_k * t / s, which maps
/// every subdiagonal entry s to t = +/-1 and h_{i,j} to h_{i,j} (s t)^{j-i}.
/// Throws InvalidArgument when the population is not invariant under s*t.
HessMatrix normalize_subdiagonal(const HessMatrix& m, SubdiagTarget target);

} // namespace bohm
