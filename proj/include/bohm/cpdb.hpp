#pragma once

#include "bohm/charpoly.hpp"
#include "bohm/gauss_int.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bohm {

/// One distinct characteristic polynomial and how many family members have it.
struct CpdbRecord {
    std::vector<GaussInt> coeffs; // constant term first, coeffs[n] == 1
    BigInt matrix_count;

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    [[nodiscard]] CharPoly poly() const { return CharPoly(coeffs); }
};

/// Canonical coefficient field "c_0,c_1,...,c_n" used both as the in-memory
/// key and in the v1 text format.
std::string coefficient_key(std::span<const GaussInt> coeffs);

/// Records ordered by degree, then lexicographically by coefficient tuple
/// (constant term first, re before im).
bool canonical_less(const CpdbRecord& a, const CpdbRecord& b);

/// Characteristic polynomial database: deduplicated polynomials with counts.
///
/// The on-disk v1 format is one header line
///   # bohm-cpdb v1; family=<family spec text>
/// followed by one line per record, "n;c_0,...,c_n;count", in canonical order.
class Cpdb {
public:
    explicit Cpdb(std::string family = {}) : family_(std::move(family)) {}

    [[nodiscard]] const std::string& family() const { return family_; }
    [[nodiscard]] std::size_t size() const { return records_.size(); }
    [[nodiscard]] bool empty() const { return records_.empty(); }
    [[nodiscard]] BigInt total_matrices() const;

    /// Adds `count` matrices with polynomial p; returns the record's new count.
    const BigInt& insert(const CharPoly& p, const BigInt& count = 1);
    const BigInt& insert(std::vector<GaussInt> coeffs, const BigInt& count);

    /// Adds every record of `other`; throws InvalidArgument when the family
    /// metadata differ (an empty family string on either side matches anything).
    void merge(const Cpdb& other);

    /// nullptr when absent.
    [[nodiscard]] const CpdbRecord* find(const CharPoly& p) const;

    [[nodiscard]] std::vector<const CpdbRecord*> sorted() const;

    template <class F>
    void for_each(F&& f) const {
        for (const auto& [key, rec] : records_) f(rec);
    }

    /// (records satisfying pred, sum of their matrix counts)
    [[nodiscard]] std::pair<std::size_t, BigInt> query(const std::function<bool(const CharPoly&)>& pred) const;

    void write(std::ostream& os) const;
    void write_file(const std::string& path) const;
    static Cpdb read(std::istream& is);
    /// Reads plain or gzip-compressed files.
    static Cpdb read_file(const std::string& path);

    /// Same family and the same records with the same counts.
    friend bool operator==(const Cpdb& a, const Cpdb& b);

private:
    std::string family_;
    std::unordered_map<std::string, CpdbRecord> records_;
};

Cpdb merge(const Cpdb& a, const Cpdb& b);

} // namespace bohm
