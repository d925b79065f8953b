#include "bohm/enumerate.hpp"

#include "bohm/enumerate_engine.hpp"
#include "bohm/errors.hpp"
#include "bohm/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace bohm {

std::uint64_t default_budget() {
    if (const char* env = std::getenv("BOHM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return v;
    }
    return 100'000'000ULL;
}

std::vector<Shard> make_shards(const FamilySpec& spec, std::size_t target_count) {
    if (target_count < 1) throw InvalidArgument("shard target must be >= 1");
    const std::size_t psize = spec.population.size();
    const std::size_t free = spec.free_entry_count();
    std::size_t depth = 0;
    std::size_t count = 1;
    while (count < target_count && depth < free) {
        count *= psize;
        ++depth;
    }
    std::vector<Shard> shards(count);
    for (std::size_t id = 0; id < count; ++id) {
        shards[id].id = id;
        shards[id].prefix.assign(depth, 0);
        std::size_t v = id;
        for (std::size_t k = depth; k-- > 0;) {
            shards[id].prefix[k] = v % psize;
            v /= psize;
        }
    }
    return shards;
}

namespace {

enum class ScalarKind { Real64, Complex64, Big };

// Componentwise bound on every coefficient the recurrence can produce, from
// |Q_r| <= |z Q_{r-1}| + M sum_k |Q_{r-k}| with M bounding |entry|.
ScalarKind choose_scalar(const FamilySpec& spec) {
    BigInt m = 0;
    for (const auto& p : spec.population.elements()) {
        BigInt a = abs(p.re) + abs(p.im);
        if (a > m) m = a;
    }
    const int n = spec.n;
    std::vector<std::vector<BigInt>> b(static_cast<std::size_t>(n) + 1);
    b[0] = {BigInt(1)};
    BigInt bmax = 1;
    for (int r = 1; r <= n; ++r) {
        auto& row = b[static_cast<std::size_t>(r)];
        row.assign(static_cast<std::size_t>(r) + 1, BigInt(0));
        row[static_cast<std::size_t>(r)] = 1;
        for (int j = 0; j < r; ++j) {
            BigInt acc = j > 0 ? b[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j - 1)] : BigInt(0);
            for (int k = 1; k <= r - j; ++k) acc += m * b[static_cast<std::size_t>(r - k)][static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(j)] = acc;
            if (acc > bmax) bmax = acc;
        }
    }
    // Products delta*q with |delta| <= 2M, complex products doubling once more.
    BigInt worst = bmax * (4 * m * (n + 1) + 1);
    BigInt limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 2, 62);
    if (worst >= limit) return ScalarKind::Big;
    return (spec.population.is_real() && spec.subdiag.is_real()) ? ScalarKind::Real64 : ScalarKind::Complex64;
}

void require_hessenberg(const FamilySpec& spec) {
    spec.validate();
    if (spec.shape != Shape::UpperHessenberg) throw InvalidArgument("upper Hessenberg family required");
}

std::vector<Shard> selected_shards(const FamilySpec& spec, const EnumOptions& opts) {
    auto shards = make_shards(spec, std::max<std::size_t>(opts.shards, 1));
    if (opts.shard_range) {
        auto [first, last] = *opts.shard_range;
        if (first > last || last > shards.size())
            throw InvalidArgument("shard range [" + std::to_string(first) + "," + std::to_string(last) + ") outside 0.." +
                                  std::to_string(shards.size()));
        shards = std::vector<Shard>(shards.begin() + static_cast<std::ptrdiff_t>(first),
                                    shards.begin() + static_cast<std::ptrdiff_t>(last));
    }
    return shards;
}

void check_budget(const FamilySpec& spec, const std::vector<Shard>& shards, std::uint64_t budget) {
    BigInt per_shard;
    std::size_t depth = shards.empty() ? 0 : shards.front().prefix.size();
    mpz_ui_pow_ui(per_shard.get_mpz_t(), spec.population.size(), spec.free_entry_count() - depth);
    BigInt total = per_shard * static_cast<unsigned long>(shards.size());
    if (total > BigInt(std::to_string(budget)))
        throw BudgetExceeded("enumeration of " + total.get_str() + " matrices exceeds budget " + std::to_string(budget) +
                             " (set BOHM_BUDGET or shard the run)");
}

template <class Scalar>
std::vector<GaussInt> to_coeffs(std::span<const Scalar> c) {
    std::vector<GaussInt> out;
    out.reserve(c.size());
    for (const auto& x : c) out.push_back(x.to_gauss());
    return out;
}

template <class Scalar>
std::uint64_t visit_shard(const FamilySpec& spec, const std::shared_ptr<const FamilySpec>& shared, const Shard& shard,
                          const Visitor& visitor) {
    detail::ColumnDfs<Scalar> dfs(spec, shard.prefix);
    return dfs.run([&](std::span<const std::size_t> choices, std::span<const Scalar> coeffs) {
        visitor(HessMatrix::from_choices(shared, choices), CharPoly(to_coeffs(coeffs)));
    });
}

std::uint64_t visit_shard_any(const FamilySpec& spec, const std::shared_ptr<const FamilySpec>& shared, const Shard& shard,
                              const Visitor& visitor, ScalarKind kind) {
    switch (kind) {
    case ScalarKind::Real64:
        return visit_shard<I64>(spec, shared, shard, visitor);
    case ScalarKind::Complex64:
        return visit_shard<G64>(spec, shared, shard, visitor);
    case ScalarKind::Big:
        break;
    }
    return visit_shard<BigScalar>(spec, shared, shard, visitor);
}

// Fast tally keyed by the non-leading coefficients as machine integers.
struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::int64_t v : key) {
            h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};
using FastMap = std::unordered_map<std::vector<std::int64_t>, std::uint64_t, KeyHash>;

inline void fill_key(std::vector<std::int64_t>& key, std::span<const I64> c) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) key[j] = c[j].v;
}
inline void fill_key(std::vector<std::int64_t>& key, std::span<const G64> c) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
        key[2 * j] = c[j].re;
        key[2 * j + 1] = c[j].im;
    }
}

template <class Scalar>
void tally_shard_fast(const FamilySpec& spec, const Shard& shard, FastMap& map) {
    detail::ColumnDfs<Scalar> dfs(spec, shard.prefix);
    std::vector<std::int64_t> key(static_cast<std::size_t>(spec.n) * (Scalar::is_complex ? 2 : 1));
    dfs.run([&](std::span<const std::size_t>, std::span<const Scalar> coeffs) {
        fill_key(key, coeffs);
        auto it = map.find(key);
        if (it == map.end()) map.emplace(key, 1);
        else ++it->second;
    });
}

void tally_shard_big(const FamilySpec& spec, const Shard& shard, Cpdb& db) {
    detail::ColumnDfs<BigScalar> dfs(spec, shard.prefix);
    dfs.run([&](std::span<const std::size_t>, std::span<const BigScalar> coeffs) {
        db.insert(to_coeffs(coeffs), 1);
    });
}

void fast_into_cpdb(const FastMap& map, int n, bool complex, Cpdb& db) {
    for (const auto& [key, count] : map) {
        std::vector<GaussInt> coeffs;
        coeffs.reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j < n; ++j) {
            if (complex)
                coeffs.emplace_back(BigInt(static_cast<long>(key[2 * static_cast<std::size_t>(j)])),
                                    BigInt(static_cast<long>(key[2 * static_cast<std::size_t>(j) + 1])));
            else
                coeffs.emplace_back(BigInt(static_cast<long>(key[static_cast<std::size_t>(j)])));
        }
        coeffs.emplace_back(1);
        BigInt c;
        mpz_set_ui(c.get_mpz_t(), count);
        db.insert(std::move(coeffs), c);
    }
}

} // namespace

std::uint64_t enumerate_family(const FamilySpec& spec, const Visitor& visitor, const EnumOptions& opts) {
    require_hessenberg(spec);
    auto shards = selected_shards(spec, opts);
    check_budget(spec, shards, opts.budget);
    auto shared = std::make_shared<const FamilySpec>(spec);
    const ScalarKind kind = choose_scalar(spec);
    std::uint64_t visits = 0;
    for (const auto& shard : shards) visits += visit_shard_any(spec, shared, shard, visitor, kind);
    return visits;
}

std::uint64_t find_members_with(const FamilySpec& spec, const std::vector<CharPoly>& targets, const Visitor& visitor,
                                const EnumOptions& opts) {
    require_hessenberg(spec);
    auto shards = selected_shards(spec, opts);
    check_budget(spec, shards, opts.budget);
    auto shared = std::make_shared<const FamilySpec>(spec);
    std::uint64_t hits = 0;
    auto emit = [&](std::span<const std::size_t> choices, std::vector<GaussInt> coeffs) {
        visitor(HessMatrix::from_choices(shared, choices), CharPoly(std::move(coeffs)));
        ++hits;
    };
    const ScalarKind kind = choose_scalar(spec);
    if (kind == ScalarKind::Big) {
        std::unordered_set<std::string> wanted;
        for (const auto& t : targets) wanted.insert(coefficient_key(t.coeffs()));
        for (const auto& shard : shards) {
            detail::ColumnDfs<BigScalar> dfs(spec, shard.prefix);
            dfs.run([&](std::span<const std::size_t> choices, std::span<const BigScalar> coeffs) {
                auto c = to_coeffs(coeffs);
                if (wanted.count(coefficient_key(c))) emit(choices, std::move(c));
            });
        }
        return hits;
    }
    auto run_fast = [&](auto tag) {
        using Scalar = decltype(tag);
        const std::size_t width = static_cast<std::size_t>(spec.n) * (Scalar::is_complex ? 2 : 1);
        std::unordered_set<std::vector<std::int64_t>, KeyHash> wanted;
        for (const auto& t : targets) {
            if (t.degree() != spec.n) continue;
            std::vector<std::int64_t> key(width);
            bool fits = true;
            for (int j = 0; j < spec.n; ++j) {
                const auto& g = t[static_cast<std::size_t>(j)];
                if (!g.re.fits_slong_p() || !g.im.fits_slong_p()) fits = false;
                if (!fits) break;
                if (Scalar::is_complex) {
                    key[2 * static_cast<std::size_t>(j)] = g.re.get_si();
                    key[2 * static_cast<std::size_t>(j) + 1] = g.im.get_si();
                } else {
                    if (!g.is_real()) fits = false;
                    key[static_cast<std::size_t>(j)] = g.re.get_si();
                }
            }
            if (fits) wanted.insert(std::move(key));
        }
        std::vector<std::int64_t> key(width);
        for (const auto& shard : shards) {
            detail::ColumnDfs<Scalar> dfs(spec, shard.prefix);
            dfs.run([&](std::span<const std::size_t> choices, std::span<const Scalar> coeffs) {
                fill_key(key, coeffs);
                if (wanted.count(key)) emit(choices, to_coeffs(coeffs));
            });
        }
    };
    if (kind == ScalarKind::Real64) run_fast(I64{});
    else run_fast(G64{});
    return hits;
}

std::uint64_t enumerate_shard(const FamilySpec& spec, const Shard& shard, const Visitor& visitor) {
    require_hessenberg(spec);
    if (shard.prefix.size() > spec.free_entry_count()) throw InvalidArgument("shard prefix longer than free entries");
    for (auto p : shard.prefix)
        if (p >= spec.population.size()) throw InvalidArgument("shard prefix index out of range");
    auto shared = std::make_shared<const FamilySpec>(spec);
    return visit_shard_any(spec, shared, shard, visitor, choose_scalar(spec));
}

std::uint64_t enumerate_general(const FamilySpec& spec, const Visitor& visitor) {
    spec.validate();
    if (spec.shape != Shape::General) throw InvalidArgument("enumerate_general needs shape=general");
    BigInt guard;
    mpz_ui_pow_ui(guard.get_mpz_t(), 3, 16);
    if (family_size(spec) > guard) throw GuardExceeded("general enumeration limited to 3^16 matrices");
    auto shared = std::make_shared<const FamilySpec>(spec);
    const std::size_t cells = spec.storage_size();
    const std::size_t psize = spec.population.size();
    std::vector<std::size_t> choice(cells, 0);
    DenseMatrix dense(spec.n);
    std::uint64_t visits = 0;
    for (;;) {
        std::vector<GaussInt> stored(cells);
        for (std::size_t k = 0; k < cells; ++k) stored[k] = spec.population[choice[k]];
        // stored is column-major; dense is row-major
        for (int j = 0; j < spec.n; ++j)
            for (int i = 0; i < spec.n; ++i) dense(i, j) = stored[static_cast<std::size_t>(j * spec.n + i)];
        HessMatrix m(shared, std::move(stored));
        visitor(m, charpoly_oracle(dense));
        ++visits;
        std::size_t k = 0;
        for (; k < cells; ++k) {
            if (++choice[k] < psize) break;
            choice[k] = 0;
        }
        if (k == cells) break;
    }
    return visits;
}

Cpdb build_cpdb(const FamilySpec& spec, const EnumOptions& opts) {
    require_hessenberg(spec);
    auto shards = selected_shards(spec, opts);
    check_budget(spec, shards, opts.budget);
    const ScalarKind kind = choose_scalar(spec);
    const unsigned workers = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(shards.size())));

    std::vector<FastMap> fast(workers);
    std::vector<Cpdb> big(workers, Cpdb(to_string(spec)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto work = [&](unsigned w) {
        try {
            for (std::size_t k = next++; k < shards.size(); k = next++) {
                switch (kind) {
                case ScalarKind::Real64:
                    tally_shard_fast<I64>(spec, shards[k], fast[w]);
                    break;
                case ScalarKind::Complex64:
                    tally_shard_fast<G64>(spec, shards[k], fast[w]);
                    break;
                case ScalarKind::Big:
                    tally_shard_big(spec, shards[k], big[w]);
                    break;
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Cpdb db(to_string(spec));
    for (unsigned w = 0; w < workers; ++w) {
        if (kind == ScalarKind::Big) {
            db.merge(big[w]);
        } else {
            Cpdb part(to_string(spec));
            fast_into_cpdb(fast[w], spec.n, kind == ScalarKind::Complex64, part);
            db.merge(part);
        }
    }
    return db;
}

Cpdb build_general_cpdb(const FamilySpec& spec) {
    Cpdb db(to_string(spec));
    enumerate_general(spec, [&](const HessMatrix&, const CharPoly& p) { db.insert(p); });
    return db;
}

} // namespace bohm
