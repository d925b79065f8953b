#include "bohm/charpoly.hpp"

#include "bohm/errors.hpp"

#include <unordered_map>

namespace bohm {

CharPoly::CharPoly(std::vector<GaussInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.back() != GaussInt(1)) throw InvalidArgument("characteristic polynomial must be monic");
}

bool CharPoly::is_real() const {
    for (const auto& c : coeffs_)
        if (!c.is_real()) return false;
    return true;
}

poly::ZPoly CharPoly::to_zpoly() const {
    poly::ZPoly out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        if (!c.is_real()) throw InvalidArgument("polynomial has complex coefficients");
        out.push_back(c.re);
    }
    return out;
}

std::string to_string(const CharPoly& p) {
    std::string out;
    for (int j = p.degree(); j >= 0; --j) {
        const GaussInt& c = p[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        std::string term;
        bool unit_coeff = c == GaussInt(1) || c == GaussInt(-1);
        if (j == 0 || !unit_coeff) {
            term = c.is_real() ? to_string(c) : "(" + to_string(c) + ")";
            if (j > 0) term += "*";
        } else if (c == GaussInt(-1)) {
            term = "-";
        }
        if (j >= 1) term += "z";
        if (j >= 2) term += "^" + std::to_string(j);
        if (!out.empty() && term[0] != '-') out += '+';
        out += term;
    }
    return out;
}

std::vector<GaussInt> unit_powers(const GaussInt& s, int n) {
    std::vector<GaussInt> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 1)));
    GaussInt p(1);
    for (int k = 0; k < std::max(n, 1); ++k) {
        out.push_back(p);
        p *= s;
    }
    return out;
}

namespace {

void require_hessenberg(const HessMatrix& m) {
    if (m.spec().shape != Shape::UpperHessenberg)
        throw InvalidArgument("recurrence needs an upper Hessenberg matrix; use charpoly_oracle");
}

} // namespace

CharPoly charpoly_thm1(const HessMatrix& m) {
    require_hessenberg(m);
    const int n = m.n();
    const auto spow = unit_powers(m.spec().subdiag, n);
    std::vector<poly::GPoly> q(static_cast<std::size_t>(n) + 1);
    q[0] = {GaussInt(1)};
    const poly::GPoly z = {GaussInt(0), GaussInt(1)};
    for (int r = 1; r <= n; ++r) {
        poly::GPoly acc = poly::mul(z, q[static_cast<std::size_t>(r - 1)]);
        for (int k = 1; k <= r; ++k) {
            GaussInt w = spow[static_cast<std::size_t>(k - 1)] * m.entry(r - k + 1, r);
            if (w.is_zero()) continue;
            acc = poly::sub(acc, poly::scale(q[static_cast<std::size_t>(r - k)], w));
        }
        q[static_cast<std::size_t>(r)] = std::move(acc);
    }
    poly::GPoly out = q[static_cast<std::size_t>(n)];
    out.resize(static_cast<std::size_t>(n) + 1);
    return CharPoly(std::move(out));
}

CharPoly charpoly_thm2(const HessMatrix& m) {
    require_hessenberg(m);
    const int n = m.n();
    const auto spow = unit_powers(m.spec().subdiag, n);
    // q[r][j], 0 <= j <= r
    std::vector<std::vector<GaussInt>> q(static_cast<std::size_t>(n) + 1);
    q[0] = {GaussInt(1)};
    std::vector<GaussInt> w(static_cast<std::size_t>(n) + 1);
    for (int r = 1; r <= n; ++r) {
        for (int k = 1; k <= r; ++k)
            w[static_cast<std::size_t>(k)] = spow[static_cast<std::size_t>(k - 1)] * m.entry(r - k + 1, r);
        auto& row = q[static_cast<std::size_t>(r)];
        row.assign(static_cast<std::size_t>(r) + 1, GaussInt(0));
        row[static_cast<std::size_t>(r)] = GaussInt(1);
        for (int j = 0; j < r; ++j) {
            GaussInt c = j > 0 ? q[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j - 1)] : GaussInt(0);
            for (int k = 1; k <= r - j; ++k) {
                const GaussInt& wk = w[static_cast<std::size_t>(k)];
                if (!wk.is_zero()) c -= wk * q[static_cast<std::size_t>(r - k)][static_cast<std::size_t>(j)];
            }
            row[static_cast<std::size_t>(j)] = std::move(c);
        }
    }
    return CharPoly(std::move(q[static_cast<std::size_t>(n)]));
}

namespace {

// det of (zI - A) restricted to rows `mask` and the trailing columns, expanded
// along the leftmost remaining column.
class LaplaceOracle {
public:
    explicit LaplaceOracle(const DenseMatrix& a) : a_(a), n_(a.n) {}

    poly::GPoly minor(unsigned mask, int col) {
        if (col == n_) return {GaussInt(1)};
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        poly::GPoly acc;
        int sign_pos = 0;
        for (int row = 0; row < n_; ++row) {
            if (!(mask & (1U << row))) continue;
            poly::GPoly entry;
            if (row == col) entry = {-a_(row, col), GaussInt(1)};
            else if (!a_(row, col).is_zero()) entry = {-a_(row, col)};
            if (!entry.empty()) {
                poly::trim(entry);
                poly::GPoly term = poly::mul(entry, minor(mask & ~(1U << row), col + 1));
                acc = (sign_pos % 2 == 0) ? poly::add(acc, term) : poly::sub(acc, term);
            }
            ++sign_pos;
        }
        memo_.emplace(mask, acc);
        return acc;
    }

private:
    const DenseMatrix& a_;
    int n_;
    std::unordered_map<unsigned, poly::GPoly> memo_;
};

} // namespace

CharPoly charpoly_oracle(const DenseMatrix& m) {
    if (m.n > 12) throw GuardExceeded("charpoly_oracle limited to n <= 12");
    if (m.n == 0) return CharPoly();
    LaplaceOracle oracle(m);
    poly::GPoly p = oracle.minor((1U << m.n) - 1, 0);
    p.resize(static_cast<std::size_t>(m.n) + 1);
    return CharPoly(std::move(p));
}

CharPoly charpoly_oracle(const HessMatrix& m) {
    if (m.n() > 12) throw GuardExceeded("charpoly_oracle limited to n <= 12");
    return charpoly_oracle(to_dense(m));
}

BigInt height(const CharPoly& p) {
    BigInt h = 0;
    for (const auto& c : p.coeffs()) {
        BigInt v = c.max_component();
        if (v > h) h = v;
    }
    return h;
}

CharPoly negated_charpoly(const CharPoly& p) {
    const int n = p.degree();
    std::vector<GaussInt> out(p.coeffs().begin(), p.coeffs().end());
    for (int j = 0; j <= n; ++j)
        if ((n - j) % 2 == 1) out[static_cast<std::size_t>(j)] = -out[static_cast<std::size_t>(j)];
    return CharPoly(std::move(out));
}

DenseMatrix evaluate_at(const CharPoly& p, const DenseMatrix& m) {
    DenseMatrix acc(m.n);
    for (int j = p.degree(); j >= 0; --j) {
        acc = acc * m;
        const GaussInt& c = p[static_cast<std::size_t>(j)];
        for (int i = 0; i < m.n; ++i) acc(i, i) += c;
    }
    return acc;
}

} // namespace bohm
