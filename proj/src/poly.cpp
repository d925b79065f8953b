#include "bohm/poly.hpp"

#include "bohm/errors.hpp"

#include <algorithm>

namespace bohm::poly {

void trim(GPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

void trim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

GPoly add(const GPoly& a, const GPoly& b) {
    GPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
    trim(out);
    return out;
}

GPoly sub(const GPoly& a, const GPoly& b) {
    GPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
    trim(out);
    return out;
}

GPoly mul(const GPoly& a, const GPoly& b) {
    if (a.empty() || b.empty()) return {};
    GPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

GPoly scale(const GPoly& a, const GaussInt& c) {
    GPoly out;
    if (c.is_zero()) return out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(x * c);
    return out;
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
    trim(out);
    return out;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
    trim(out);
    return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

ZPoly derivative(const ZPoly& a) {
    if (a.size() <= 1) return {};
    ZPoly out(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k] * static_cast<unsigned long>(k);
    trim(out);
    return out;
}

BigInt content(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.empty()) return {};
    BigInt c = content(a);
    if (sgn(a.back()) < 0) c = -c;
    ZPoly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mpz_divexact(out[k].get_mpz_t(), a[k].get_mpz_t(), c.get_mpz_t());
    return out;
}

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw InvalidArgument("pseudo_remainder by zero polynomial");
    ZPoly r = a;
    trim(r);
    const int db = degree(b);
    const BigInt& lb = b.back();
    int steps = std::max(degree(r) - db + 1, 0);
    while (degree(r) >= db) {
        const int dr = degree(r);
        BigInt lr = r.back();
        for (auto& c : r) c *= lb;
        for (int k = 0; k <= db; ++k) r[static_cast<std::size_t>(dr - db + k)] -= lr * b[static_cast<std::size_t>(k)];
        trim(r);
        --steps;
    }
    // Bring the multiplier up to the full lc(b)^(deg a - deg b + 1).
    for (; steps > 0; --steps)
        for (auto& c : r) c *= lb;
    return r;
}

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw InvalidArgument("division by zero polynomial");
    ZPoly r = a;
    trim(r);
    if (r.empty()) return {};
    const int db = degree(b);
    if (degree(r) < db) throw InvalidArgument("inexact polynomial division");
    ZPoly q(static_cast<std::size_t>(degree(r) - db + 1));
    const BigInt& lb = b.back();
    while (degree(r) >= db) {
        const int dr = degree(r);
        if (!mpz_divisible_p(r.back().get_mpz_t(), lb.get_mpz_t())) throw InvalidArgument("inexact polynomial division");
        BigInt t = r.back() / lb;
        for (int k = 0; k <= db; ++k) r[static_cast<std::size_t>(dr - db + k)] -= t * b[static_cast<std::size_t>(k)];
        q[static_cast<std::size_t>(dr - db)] = t;
        trim(r);
    }
    if (!r.empty()) throw InvalidArgument("inexact polynomial division");
    return q;
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    ZPoly x = primitive_part(a);
    ZPoly y = primitive_part(b);
    if (x.empty()) return y;
    if (y.empty()) return x;
    if (degree(x) < degree(y)) std::swap(x, y);
    while (!y.empty()) {
        ZPoly r = primitive_part(pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

ZPoly squarefree_part(const ZPoly& a) {
    ZPoly p = a;
    trim(p);
    if (degree(p) <= 0) return primitive_part(p);
    ZPoly g = gcd(p, derivative(p));
    return primitive_part(divexact(primitive_part(p), g));
}

namespace {

// Sturm chain with positive rescaling at each step; signs are those of the
// classical chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
std::vector<ZPoly> sturm_chain(const ZPoly& p) {
    std::vector<ZPoly> chain;
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (!chain.back().empty() && degree(chain.back()) > 0) {
        const ZPoly& a = chain[chain.size() - 2];
        const ZPoly& b = chain.back();
        ZPoly r = pseudo_remainder(a, b);
        // prem = lc(b)^delta * (a mod b); undo the sign of lc(b)^delta, then negate.
        const int delta = degree(a) - degree(b) + 1;
        bool flip = !(sgn(b.back()) < 0 && (delta % 2) == 1);
        if (r.empty()) break;
        BigInt c = content(r);
        for (auto& x : r) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
            if (flip) x = -x;
        }
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_at_neg_inf(const ZPoly& p) {
    int s = sgn(p.back());
    return (degree(p) % 2 == 0) ? s : -s;
}

int variations(const std::vector<int>& signs) {
    int v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

} // namespace

int count_negative_real_roots(const ZPoly& squarefree) {
    if (degree(squarefree) <= 0) return 0;
    if (sgn(squarefree[0]) == 0) throw InvalidArgument("count_negative_real_roots needs p(0) != 0");
    auto chain = sturm_chain(squarefree);
    std::vector<int> at_inf;
    std::vector<int> at_zero;
    for (const auto& q : chain) {
        if (q.empty()) continue;
        at_inf.push_back(sign_at_neg_inf(q));
        at_zero.push_back(sgn(q[0]));
    }
    return variations(at_inf) - variations(at_zero);
}

int count_real_roots(const ZPoly& squarefree) {
    if (degree(squarefree) <= 0) return 0;
    auto chain = sturm_chain(squarefree);
    std::vector<int> lo;
    std::vector<int> hi;
    for (const auto& q : chain) {
        if (q.empty()) continue;
        lo.push_back(sign_at_neg_inf(q));
        hi.push_back(sgn(q.back()));
    }
    return variations(lo) - variations(hi);
}

} // namespace bohm::poly
