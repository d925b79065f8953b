#include "bohm/height.hpp"

#include "bohm/enumerate.hpp"
#include "bohm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace bohm {

namespace {

HessMatrix toeplitz(int n, const Population& pop, const std::vector<GaussInt>& t) {
    FamilySpec fs;
    fs.n = n;
    fs.population = pop;
    fs.validate();
    auto spec = std::make_shared<const FamilySpec>(fs);
    std::vector<GaussInt> stored(spec->storage_size());
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= j; ++i) stored[upper_slot(i, j)] = t[static_cast<std::size_t>(j - i + 1)];
    return HessMatrix(spec, std::move(stored));
}

} // namespace

HessMatrix max_height_witness(int n) {
    if (n < 1) throw InvalidArgument("max_height_witness: n >= 1");
    return toeplitz(n, parse_population("-1,0,1"), std::vector<GaussInt>(static_cast<std::size_t>(n) + 1, GaussInt(-1)));
}

HessMatrix two_point_witness(int n, const GaussInt& a, const GaussInt& b) {
    if (n < 1) throw InvalidArgument("two_point_witness: n >= 1");
    std::vector<GaussInt> t(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) t[static_cast<std::size_t>(k)] = k % 2 == 0 ? a : b;
    return toeplitz(n, Population(a == b ? std::vector<GaussInt>{a} : std::vector<GaussInt>{a, b}), t);
}

bool is_max_height_pattern(const HessMatrix& m, bool ignore_corner) {
    const GaussInt& s = m.spec().subdiag;
    bool direct = true, negated = true;
    for (int j = 1; j <= m.n(); ++j) {
        for (int i = 1; i <= j; ++i) {
            if (ignore_corner && i == 1 && j == m.n() && m.n() > 1) continue;
            const unsigned k1 = static_cast<unsigned>(j - i); // k - 1
            GaussInt v = pow(s, k1) * m.entry(i, j);
            direct = direct && v == GaussInt(-1);
            negated = negated && v == GaussInt(k1 % 2 == 0 ? 1 : -1);
        }
    }
    return direct || negated;
}

double log_one_plus_phi() { return std::log(1.0 + (1.0 + std::sqrt(5.0)) / 2.0); }

HeightSeries tau_series(int N, HeightMode mode) {
    if (N < 2) throw InvalidArgument("tau_series: N >= 2");
    HeightSeries out;
    out.mode = mode;
    // q_{n,j} = q_{n-1,j-1} + S_{n-1,j} with column sums S_{m,j} = sum_{i=j..m} q_{i,j}.
    if (mode == HeightMode::Exact) {
        if (N > 2000) throw GuardExceeded("tau_series: exact mode limited to N <= 2000");
        std::vector<BigInt> prev{BigInt(1)}, sums{BigInt(1)};
        for (int n = 1; n <= N; ++n) {
            std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
            sums.emplace_back(0);
            BigInt tau = 0;
            for (int j = 0; j <= n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                BigInt v = sums[uj];
                if (j > 0) v += prev[uj - 1];
                if (j == n) v = 1;
                if (v > tau) tau = v;
                row[uj] = std::move(v);
            }
            for (int j = 0; j <= n; ++j) sums[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
            prev = std::move(row);
            long exp = 0;
            double mant = mpz_get_d_2exp(&exp, tau.get_mpz_t());
            out.log_taus.push_back(std::log(mant) + static_cast<double>(exp) * std::log(2.0));
            out.taus.push_back(std::move(tau));
        }
        return out;
    }
    if (N > 50000) throw GuardExceeded("tau_series: log mode limited to N <= 50000");
    // All stored values are true values times exp(-offset).
    std::vector<double> prev(static_cast<std::size_t>(N) + 1, 0.0), sums(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> row(static_cast<std::size_t>(N) + 1, 0.0);
    prev[0] = 1;
    sums[0] = 1;
    double offset = 0;
    for (int n = 1; n <= N; ++n) {
        const double one = std::exp(-offset); // q_{n,n} = 1 in the current scale
        double tau = 0;
        for (int j = 0; j <= n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            double v = j == n ? one : sums[uj] + (j > 0 ? prev[uj - 1] : 0.0);
            row[uj] = v;
            tau = std::max(tau, v);
        }
        for (int j = 0; j <= n; ++j) sums[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
        std::swap(prev, row);
        out.log_taus.push_back(std::log(tau) + offset);
        double big = *std::max_element(sums.begin(), sums.begin() + n + 1);
        if (big > 1e200) {
            const double scale = 1.0 / big;
            for (int j = 0; j <= n; ++j) {
                prev[static_cast<std::size_t>(j)] *= scale;
                sums[static_cast<std::size_t>(j)] *= scale;
            }
            offset += std::log(big);
        }
    }
    return out;
}

GrowthConstant estimate_growth_constant(const HeightSeries& s) {
    const int n = s.size();
    const double l = s.log_tau(n) - n * log_one_plus_phi();
    return {std::exp(l), std::exp(l + 0.5 * std::log(static_cast<double>(n)))};
}

int convergence_onset(const HeightSeries& s, double tol) {
    int onset = s.size() - 1;
    for (int n = s.size() - 1; n >= 1; --n) {
        if (std::abs(s.log_ratio(n) - log_one_plus_phi()) > tol) break;
        onset = n;
    }
    return onset;
}

void write_tau_csv(const HeightSeries& s, std::ostream& os) {
    os << "n,log_ratio\n";
    char buf[64];
    for (int n = 1; n < s.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%d,%.15g\n", n, s.log_ratio(n));
        os << buf;
    }
}

MaxHeightReport verify_max_height(int n) {
    if (n < 1) throw InvalidArgument("verify_max_height: n >= 1");
    if (n > 5) throw GuardExceeded("verify_max_height: exhaustive check limited to n <= 5");
    MaxHeightReport rep;
    rep.n = n;
    rep.witness_height = height(charpoly(max_height_witness(n)));
    std::vector<FamilySpec> specs{make_hessenberg(n, "-1,0,1", 1), make_hessenberg(n, "-1,0,1", -1)};
    std::vector<Cpdb> dbs;
    for (const auto& spec : specs) {
        dbs.push_back(build_cpdb(spec));
        dbs.back().for_each([&](const CpdbRecord& r) { rep.max_height = std::max(rep.max_height, height(r.poly())); });
    }
    for (std::size_t f = 0; f < specs.size(); ++f) {
        std::vector<CharPoly> targets;
        dbs[f].for_each([&](const CpdbRecord& r) {
            if (height(r.poly()) == rep.max_height) targets.push_back(r.poly());
        });
        find_members_with(specs[f], targets, [&](const HessMatrix& m, const CharPoly&) { rep.attaining.push_back(m); });
    }
    std::size_t patterns = 0;
    for (const auto& m : rep.attaining) {
        if (is_max_height_pattern(m)) ++patterns;
        else ++rep.outside_pattern;
        if (!is_max_height_pattern(m, true)) ++rep.outside_pattern_free_corner;
    }
    // n = 1: the direct and negated patterns coincide with {-1} and {1}, one per sign
    rep.patterns_attain = patterns == 4;
    return rep;
}

} // namespace bohm
