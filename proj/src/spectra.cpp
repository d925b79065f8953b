#include "bohm/spectra.hpp"

#include "bohm/classify.hpp"
#include "bohm/errors.hpp"
#include "bohm/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <type_traits>

namespace bohm {

namespace {

// Ring glue so the same Yun code runs over Z and Z[i].
bool zero(const BigInt& x) { return sgn(x) == 0; }
bool zero(const GaussInt& x) { return x.is_zero(); }

BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
GaussInt exact_div(const GaussInt& a, const GaussInt& b) { return divexact(a, b); }

BigInt elem_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Rounded-quotient Euclid in Z[i].
GaussInt elem_gcd(GaussInt a, GaussInt b) {
    auto round_div = [](const BigInt& x, const BigInt& n) {
        // floor((2x + n) / 2n)
        BigInt num = 2 * x + n, den = 2 * n, q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return q;
    };
    while (!b.is_zero()) {
        BigInt n = b.norm();
        GaussInt t = a * b.conj();
        GaussInt q(round_div(t.re, n), round_div(t.im, n));
        GaussInt r = a - q * b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Unit u making u * lc canonical (positive, or in the first quadrant).
BigInt normalizing_unit(const BigInt& lc) { return sgn(lc) < 0 ? BigInt(-1) : BigInt(1); }
GaussInt normalizing_unit(const GaussInt& lc) {
    // rotate into re > 0, im >= 0
    for (GaussInt u : {GaussInt(1), GaussInt(0, -1), GaussInt(-1), GaussInt(0, 1)}) {
        GaussInt v = lc * u;
        if (sgn(v.re) > 0 && sgn(v.im) >= 0) return u;
    }
    return GaussInt(1);
}

template <class T>
using Poly = std::vector<T>;

template <class T>
void trim(Poly<T>& p) {
    while (!p.empty() && zero(p.back())) p.pop_back();
}

template <class T>
int deg(const Poly<T>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <class T>
Poly<T> deriv(const Poly<T>& p) {
    Poly<T> d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * T(static_cast<long>(k)));
    trim(d);
    return d;
}

template <class T>
Poly<T> sub(Poly<T> a, const Poly<T>& b) {
    if (a.size() < b.size()) a.resize(b.size(), T(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = a[k] - b[k];
    trim(a);
    return a;
}

template <class T>
Poly<T> primitive(Poly<T> p) {
    trim(p);
    if (p.empty()) return p;
    T c = p.back();
    for (const auto& x : p) c = elem_gcd(c, x);
    T u = normalizing_unit(p.back());
    for (auto& x : p) x = exact_div(x, c) * u;
    // dividing by an associate of the content can leave lc off-canonical
    T v = normalizing_unit(p.back());
    for (auto& x : p) x = x * v;
    return p;
}

template <class T>
Poly<T> prem(Poly<T> a, const Poly<T>& b) {
    const T& lc = b.back();
    while (deg(a) >= deg(b) && !a.empty()) {
        const int shift = deg(a) - deg(b);
        T f = a.back();
        for (auto& x : a) x = x * lc;
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - f * b[k];
        trim(a);
    }
    return a;
}

template <class T>
Poly<T> pgcd(Poly<T> a, Poly<T> b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (deg(a) < deg(b)) std::swap(a, b);
    while (!b.empty()) {
        Poly<T> r = primitive(prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <class T>
Poly<T> pdiv(Poly<T> a, const Poly<T>& b) {
    trim(a);
    if (deg(a) < deg(b)) {
        if (!a.empty()) throw InvalidArgument("polynomial division is not exact");
        return {};
    }
    Poly<T> q(static_cast<std::size_t>(deg(a) - deg(b) + 1), T(0));
    for (int k = deg(a) - deg(b); k >= 0; --k) {
        T c = exact_div(a[static_cast<std::size_t>(k) + b.size() - 1], b.back());
        q[static_cast<std::size_t>(k)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[static_cast<std::size_t>(k) + j] = a[static_cast<std::size_t>(k) + j] - c * b[j];
    }
    trim(a);
    if (!a.empty()) throw InvalidArgument("polynomial division is not exact");
    return q;
}

template <class T>
std::vector<SquarefreeFactor<T>> yun(Poly<T> p) {
    trim(p);
    if (p.empty()) throw InvalidArgument("squarefree_decompose: zero polynomial");
    std::vector<SquarefreeFactor<T>> out;
    if (deg(p) == 0) return out;
    Poly<T> dp = deriv(p);
    Poly<T> b = pgcd(p, dp);
    Poly<T> c = pdiv(p, b);
    Poly<T> d = sub(pdiv(dp, b), deriv(c));
    for (int i = 1; deg(c) > 0; ++i) {
        Poly<T> a = pgcd(c, d);
        if (deg(a) > 0) out.push_back({a, i});
        c = pdiv(c, a);
        d = sub(pdiv(d, a), deriv(c));
    }
    return out;
}

template <class T>
Complex to_c(const T& x);
template <>
Complex to_c(const BigInt& x) {
    return {x.get_d(), 0.0};
}
template <>
Complex to_c(const GaussInt& x) {
    return x.to_complex();
}

template <class T>
std::vector<Complex> to_complex(const Poly<T>& p) {
    std::vector<Complex> out;
    for (const auto& x : p) out.push_back(to_c(x));
    return out;
}

struct Horner {
    Complex value, slope;
    double bound; // sum |c_j| |z|^j, for the rounding-error floor
};

Horner horner(const std::vector<Complex>& c, Complex z) {
    Complex v = 0, d = 0;
    double b = 0, az = std::abs(z);
    for (std::size_t k = c.size(); k-- > 0;) {
        d = d * z + v;
        v = v * z + c[k];
        b = b * az + std::abs(c[k]);
    }
    return {v, d, b};
}

bool exact_root(const poly::ZPoly& f, const BigInt& r) {
    BigInt acc = 0;
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * r + f[k];
    return sgn(acc) == 0;
}

bool exact_root(const poly::GPoly& f, const GaussInt& r) {
    GaussInt acc(0);
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * r + f[k];
    return acc.is_zero();
}

// Snap numerically found roots onto exact Gaussian integers where they are roots.
template <class T>
void snap_integer_roots(const Poly<T>& f, std::vector<Complex>& z) {
    for (auto& r : z) {
        const double re = std::round(r.real()), im = std::round(r.imag());
        if (std::abs(r.real() - re) > 1e-6 || std::abs(r.imag() - im) > 1e-6) continue;
        if (std::abs(re) > 1e15 || std::abs(im) > 1e15) continue;
        bool ok;
        if constexpr (std::is_same_v<T, BigInt>) {
            if (im != 0) continue;
            ok = exact_root(f, BigInt(re));
        } else {
            ok = exact_root(f, GaussInt(BigInt(re), BigInt(im)));
        }
        if (ok) r = Complex(re, im);
    }
}

// Real factor: make exactly the Sturm-counted number of roots real and pair the rest.
void fix_real_structure(const poly::ZPoly& f, std::vector<Complex>& z) {
    const int real_count = poly::count_real_roots(poly::primitive_part(f));
    std::vector<std::size_t> idx(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(z[a].imag()) < std::abs(z[b].imag()); });
    auto c = to_complex(f);
    std::vector<Complex> reals, others;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        Complex r = z[idx[k]];
        if (static_cast<int>(k) < real_count) {
            double x = r.real();
            for (int it = 0; it < 2; ++it) {
                auto h = horner(c, Complex(x, 0));
                if (h.slope.real() != 0) x -= h.value.real() / h.slope.real();
            }
            reals.emplace_back(x, 0.0);
        } else {
            others.push_back(r);
        }
    }
    // conjugate pairing: average each upper root with the nearest lower one
    std::vector<Complex> upper, lower;
    for (auto r : others) (r.imag() > 0 ? upper : lower).push_back(r);
    std::vector<Complex> paired;
    if (upper.size() == lower.size()) {
        std::vector<bool> used(lower.size(), false);
        for (auto u : upper) {
            std::size_t best = lower.size();
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < lower.size(); ++j) {
                if (used[j]) continue;
                double d = std::abs(std::conj(lower[j]) - u);
                if (d < bd) {
                    bd = d;
                    best = j;
                }
            }
            used[best] = true;
            Complex m = 0.5 * (u + std::conj(lower[best]));
            paired.push_back(m);
            paired.push_back(std::conj(m));
        }
    } else {
        paired = others;
    }
    z = reals;
    z.insert(z.end(), paired.begin(), paired.end());
}

template <class T>
void append_factor_roots(const SquarefreeFactor<T>& sf, RootSet& out) {
    Poly<T> f = sf.factor;
    int zeros = 0;
    while (zero(f[static_cast<std::size_t>(zeros)])) ++zeros;
    if (zeros > 0) {
        out.factors.push_back({GaussInt(0), GaussInt(1)});
        out.roots.push_back({Complex(0, 0), sf.multiplicity, static_cast<int>(out.factors.size()) - 1});
        f.erase(f.begin(), f.begin() + zeros);
    }
    if (deg(f) < 1) return;
    std::vector<Complex> z = aberth_roots(to_complex(f));
    if constexpr (std::is_same_v<T, BigInt>) fix_real_structure(f, z);
    snap_integer_roots(f, z);
    out.factors.emplace_back(f.begin(), f.end());
    for (auto r : z) out.roots.push_back({r, sf.multiplicity, static_cast<int>(out.factors.size()) - 1});
}

} // namespace

int RootSet::degree() const {
    int d = 0;
    for (const auto& r : roots) d += r.multiplicity;
    return d;
}

double RootSet::spectral_radius() const {
    double m = 0;
    for (const auto& r : roots) m = std::max(m, std::abs(r.value));
    return m;
}

double RootSet::max_real_part() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& r : roots) m = std::max(m, r.value.real());
    return m;
}

std::vector<SquarefreeFactor<BigInt>> squarefree_decompose(const poly::ZPoly& p) { return yun(p); }
std::vector<SquarefreeFactor<GaussInt>> squarefree_decompose(const poly::GPoly& p) { return yun(p); }

std::vector<std::pair<CharPoly, int>> squarefree_decompose(const CharPoly& p) {
    std::vector<std::pair<CharPoly, int>> out;
    for (auto& f : yun(poly::GPoly(p.coeffs().begin(), p.coeffs().end()))) out.emplace_back(CharPoly(f.factor), f.multiplicity);
    return out;
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iterations) {
    std::vector<Complex> c = coeffs;
    while (!c.empty() && c.back() == Complex(0)) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    if (n == 1) return {-c[0] / c[1]};
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double pi = std::acos(-1.0);

    // initial circle from the geometric mean of the root moduli
    double r = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n);
    if (!(r > 0) || !std::isfinite(r)) r = 1;
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(r, 2 * pi * k / n + 0.4);

    auto converged = [&](const Horner& h, Complex x) {
        const double a = std::abs(h.value);
        return a <= 1e-13 * std::pow(1 + std::abs(x), n) || a <= 16 * eps * h.bound;
    };

    std::vector<bool> done(n, false);
    int it = 0;
    for (; it < max_iterations; ++it) {
        bool all = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            auto h = horner(c, z[k]);
            if (converged(h, z[k])) {
                done[k] = true;
                continue;
            }
            all = false;
            Complex ratio = h.value / h.slope;
            Complex sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            Complex w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = Complex(1e-3, 1e-3);
            z[k] -= w;
        }
        if (all) break;
    }
    if (it == max_iterations) throw ConvergenceError("aberth_roots: no convergence");
    for (int pass = 0; pass < 2; ++pass) {
        for (auto& x : z) {
            auto h = horner(c, x);
            if (h.slope != Complex(0)) {
                Complex y = x - h.value / h.slope;
                if (std::abs(horner(c, y).value) <= std::abs(h.value)) x = y;
            }
        }
    }
    return z;
}

RootSet roots(const CharPoly& p) {
    if (p.degree() < 1) throw InvalidArgument("roots: degree must be at least 1");
    RootSet out;
    if (p.is_real()) {
        for (const auto& f : yun(p.to_zpoly())) append_factor_roots(f, out);
    } else {
        for (const auto& f : yun(poly::GPoly(p.coeffs().begin(), p.coeffs().end()))) append_factor_roots(f, out);
    }
    return out;
}

std::pair<long long, long long> EigenvalueSet::cell(Complex z) const {
    return {std::llround(z.real() / tol_), std::llround(z.imag() / tol_)};
}

int EigenvalueSet::intern(const poly::GPoly& f) {
    auto [it, fresh] = factor_ids_.emplace(coefficient_key(f), static_cast<int>(factors_.size()));
    if (fresh) factors_.push_back(f);
    return it->second;
}

bool EigenvalueSet::same(const Entry& e, Complex z, int factor) {
    if (std::abs(e.z.real() - z.real()) > tol_ || std::abs(e.z.imag() - z.imag()) > tol_) return false;
    if (!exact_ || (e.factor == factor && e.z == z)) return true;
    auto key = std::minmax(e.factor, factor);
    auto it = gcd_roots_.find(key);
    if (it == gcd_roots_.end()) {
        const auto& a = factors_[static_cast<std::size_t>(key.first)];
        const auto& b = factors_[static_cast<std::size_t>(key.second)];
        RootSet common;
        bool real = std::all_of(a.begin(), a.end(), [](const GaussInt& g) { return g.is_real(); }) &&
                    std::all_of(b.begin(), b.end(), [](const GaussInt& g) { return g.is_real(); });
        if (real) {
            poly::ZPoly ra, rb;
            for (const auto& g : a) ra.push_back(g.re);
            for (const auto& g : b) rb.push_back(g.re);
            auto h = pgcd(ra, rb);
            if (deg(h) > 0) append_factor_roots(SquarefreeFactor<BigInt>{h, 1}, common);
        } else {
            auto h = pgcd(a, b);
            if (deg(h) > 0) append_factor_roots(SquarefreeFactor<GaussInt>{h, 1}, common);
        }
        std::vector<Complex> vals;
        for (const auto& r : common.roots) vals.push_back(r.value);
        it = gcd_roots_.emplace(key, std::move(vals)).first;
    }
    const auto& h = it->second;
    if (h.empty()) return false;
    auto nearest = [&](Complex w) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < h.size(); ++k)
            if (std::abs(h[k] - w) < std::abs(h[best] - w)) best = k;
        return best;
    };
    const std::size_t i = nearest(e.z), j = nearest(z);
    return i == j && std::abs(h[i] - z) <= tol_ && std::abs(h[i] - e.z) <= tol_;
}

const EigenvalueSet::Entry* EigenvalueSet::find(Complex z, int factor) {
    auto [cx, cy] = cell(z);
    for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy) {
            auto it = cells_.find({cx + dx, cy + dy});
            if (it == cells_.end()) continue;
            for (std::size_t k : it->second)
                if (same(entries_[k], z, factor)) return &entries_[k];
        }
    return nullptr;
}

std::pair<Complex, bool> EigenvalueSet::insert(Complex z, const poly::GPoly& factor) {
    const int id = exact_ ? intern(factor) : -1;
    if (const Entry* e = find(z, id)) return {e->z, false};
    cells_[cell(z)].push_back(entries_.size());
    entries_.push_back({z, id});
    return {z, true};
}

bool EigenvalueSet::contains(Complex z, const poly::GPoly& factor) {
    return find(z, exact_ ? intern(factor) : -1) != nullptr;
}

std::vector<Complex> EigenvalueSet::values() const {
    std::vector<Complex> out;
    out.reserve(cells_.size());
    for (const auto& e : entries_) out.push_back(e.z);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

namespace {

int database_degree(const Cpdb& db) {
    int n = 0;
    db.for_each([&](const CpdbRecord& r) { n = std::max(n, r.degree()); });
    return n;
}

} // namespace

std::vector<std::pair<const CpdbRecord*, RootSet>> solve_database(const Cpdb& db, unsigned threads) {
    std::vector<std::pair<const CpdbRecord*, RootSet>> out;
    for (const auto* rec : db.sorted()) out.emplace_back(rec, RootSet{});
    threads = std::max(1U, threads);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t k; (k = next.fetch_add(1)) < out.size();) out[k].second = roots(out[k].first->poly());
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = out.size();
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

SpectrumSummary summarize_spectrum(const Cpdb& db, const SpectraOptions& opts) {
    const int n = database_degree(db);
    std::vector<EigenvalueSet> classes(static_cast<std::size_t>(n) + 1, EigenvalueSet(opts.tol, opts.exact_identification));
    EigenvalueSet all(opts.tol, opts.exact_identification);
    std::vector<std::pair<Complex, const poly::GPoly*>> multiple;
    const auto solved = solve_database(db, opts.threads);
    for (const auto& [rec, rs] : solved) {
        for (const auto& r : rs.roots) {
            const auto& f = rs.factors[static_cast<std::size_t>(r.factor)];
            bool fresh = classes[static_cast<std::size_t>(r.multiplicity)].insert(r.value, f).second;
            all.insert(r.value, f);
            if (fresh && r.multiplicity > 1) multiple.emplace_back(r.value, &f);
        }
    }
    SpectrumSummary out;
    out.by_class.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) out.by_class.counts[static_cast<std::size_t>(k)] = classes[static_cast<std::size_t>(k)].size();
    out.distinct_eigenvalues = all.size();
    for (auto z : all.values())
        if (std::abs(z.imag()) <= opts.tol) ++out.distinct_real;
    for (const auto& [z, f] : multiple)
        if (!classes[1].contains(z, *f)) out.multiple_only.push_back(z);
    return out;
}

MultiplicityTable multiplicity_table(const Cpdb& db, const SpectraOptions& opts) {
    return summarize_spectrum(db, opts).by_class;
}

MultiplicityTable multiplicity_table(const FamilySpec& spec, const EnumOptions& enum_opts) {
    SpectraOptions so;
    so.threads = enum_opts.threads;
    return multiplicity_table(build_cpdb(spec, enum_opts), so);
}

std::size_t distinct_real_eigs(const Cpdb& db, const SpectraOptions& opts) {
    return summarize_spectrum(db, opts).distinct_real;
}

std::size_t distinct_real_eigs(const FamilySpec& spec, const EnumOptions& enum_opts) {
    SpectraOptions so;
    so.threads = enum_opts.threads;
    return distinct_real_eigs(build_cpdb(spec, enum_opts), so);
}

std::optional<double> max_real_part(const Cpdb& db, RealPartFilter filter) {
    std::optional<double> best;
    db.for_each([&](const CpdbRecord& rec) {
        CharPoly p = rec.poly();
        if (filter == RealPartFilter::StableOnly && !(p.is_real() && is_stable_type1(p))) return;
        double m = roots(p).max_real_part();
        if (!best || m > *best) best = m;
    });
    return best;
}

std::optional<double> max_real_part(const FamilySpec& spec, RealPartFilter filter, const EnumOptions& enum_opts) {
    return max_real_part(build_cpdb(spec, enum_opts), filter);
}

void write_eigenvalue_csv(const Cpdb& db, std::ostream& os, const SpectraOptions& opts) {
    const int n = database_degree(db);
    std::vector<EigenvalueSet> classes(static_cast<std::size_t>(n) + 1, EigenvalueSet(opts.tol, opts.exact_identification));
    struct Key {
        double re, im;
        int m;
        bool operator<(const Key& o) const {
            if (m != o.m) return m < o.m;
            if (re != o.re) return re < o.re;
            return im < o.im;
        }
    };
    std::map<Key, BigInt> counts;
    for (const auto& [rec, rs] : solve_database(db, opts.threads)) {
        for (const auto& r : rs.roots) {
            const auto& f = rs.factors[static_cast<std::size_t>(r.factor)];
            Complex rep = classes[static_cast<std::size_t>(r.multiplicity)].insert(r.value, f).first;
            counts[{rep.real(), rep.imag(), r.multiplicity}] += rec->matrix_count;
        }
    }
    os << "re,im,multiplicity,count\n";
    char buf[64];
    for (const auto& [k, c] : counts) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", k.re, k.im);
        os << buf << k.m << ',' << c.get_str() << '\n';
    }
}

} // namespace bohm
