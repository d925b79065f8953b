#pragma once

#include "bohm/charpoly.hpp"
#include "bohm/cpdb.hpp"
#include "bohm/family.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace bohm {

/// BOHM_BUDGET from the environment, else 10^8 matrices.
std::uint64_t default_budget();

/// The family members whose first `prefix.size()` free entries (column-major)
/// take the given population indices. Shard ids are the mixed-radix value of
/// the prefix, so ids are deterministic.
struct Shard {
    std::size_t id = 0;
    std::vector<std::size_t> prefix;
};

/// |P|^d shards for the smallest d with |P|^d >= target_count (d capped at
/// the number of free entries). The shards partition the family.
std::vector<Shard> make_shards(const FamilySpec& spec, std::size_t target_count);

struct EnumOptions {
    /// Maximum number of matrices a single call may visit.
    std::uint64_t budget = default_budget();
    /// Target shard count; the work is split by make_shards.
    std::size_t shards = 1;
    /// Worker threads; each owns a private cursor and tally.
    unsigned threads = 1;
    /// Restrict to shard ids in [first, last); used for multi-invocation runs
    /// whose partial databases are merged afterwards.
    std::optional<std::pair<std::size_t, std::size_t>> shard_range;
};

using Visitor = std::function<void(const HessMatrix&, const CharPoly&)>;

/// Visits every member exactly once with its characteristic polynomial,
/// computed incrementally. Single-threaded; honours budget and shard_range.
/// Throws BudgetExceeded before visiting anything when over budget.
std::uint64_t enumerate_family(const FamilySpec& spec, const Visitor& visitor, const EnumOptions& opts = {});

/// Visits only the members whose characteristic polynomial is one of
/// `targets`; the other members are never materialized. Honours budget and
/// shard_range like enumerate_family. Returns the number of members visited.
std::uint64_t find_members_with(const FamilySpec& spec, const std::vector<CharPoly>& targets, const Visitor& visitor,
                                const EnumOptions& opts = {});

/// Members of one shard only.
std::uint64_t enumerate_shard(const FamilySpec& spec, const Shard& shard, const Visitor& visitor);

/// All |P|^(n^2) general matrices, characteristic polynomials by the oracle.
/// Guarded to family_size <= 3^16.
std::uint64_t enumerate_general(const FamilySpec& spec, const Visitor& visitor);

/// Deduplicated characteristic polynomial database of a Hessenberg family,
/// built on the checked 64-bit path with an arbitrary-precision rerun on
/// overflow. Shards run on opts.threads workers and are merged afterwards.
Cpdb build_cpdb(const FamilySpec& spec, const EnumOptions& opts = {});

/// Database of a general-shape family (oracle path).
Cpdb build_general_cpdb(const FamilySpec& spec);

} // namespace bohm
