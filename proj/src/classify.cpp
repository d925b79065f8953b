#include "bohm/classify.hpp"

#include "bohm/errors.hpp"
#include "bohm/poly.hpp"

#include <algorithm>
#include <sstream>

namespace bohm {

namespace {

poly::ZPoly real_coeffs(const CharPoly& p, const char* what) {
    if (!p.is_real()) throw InvalidArgument(std::string(what) + ": complex coefficients");
    return p.to_zpoly();
}

// Fraction-free elimination without pivoting; a[k][k] after step k is the
// (k+1)-th leading principal minor. Stops at the first zero pivot.
std::vector<BigInt> leading_minors(std::vector<std::vector<BigInt>> a) {
    const std::size_t n = a.size();
    std::vector<BigInt> out;
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(a[k][k]);
        if (a[k][k] == 0) {
            out.resize(n, BigInt(0));
            break;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return out;
}

} // namespace

std::vector<BigInt> hurwitz_minors(const CharPoly& p) {
    auto c = real_coeffs(p, "hurwitz_minors");
    const int n = p.degree();
    // b_k is the coefficient of z^(n-k)
    auto b = [&](int k) -> BigInt { return (k < 0 || k > n) ? BigInt(0) : c[n - k]; };
    std::vector<std::vector<BigInt>> h(n, std::vector<BigInt>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) h[i - 1][j - 1] = b(2 * j - i);
    return leading_minors(std::move(h));
}

bool is_stable_type1(const CharPoly& p) {
    auto c = real_coeffs(p, "is_stable_type1");
    if (std::any_of(c.begin(), c.end(), [](const BigInt& x) { return sgn(x) <= 0; })) return false;
    auto minors = hurwitz_minors(p);
    return std::all_of(minors.begin(), minors.end(), [](const BigInt& x) { return sgn(x) > 0; });
}

bool is_neutral(const CharPoly& p) {
    auto c = real_coeffs(p, "is_neutral");
    std::size_t m = 0;
    while (sgn(c[m]) == 0) ++m;
    poly::ZPoly q(c.begin() + static_cast<std::ptrdiff_t>(m), c.end());
    poly::ZPoly g;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k % 2 == 1) {
            if (sgn(q[k]) != 0) return false;
        } else {
            g.push_back(q[k]);
        }
    }
    if (g.size() == 1) return true;
    if (std::any_of(g.begin(), g.end(), [](const BigInt& x) { return sgn(x) < 0; })) return false;
    // g(0) = q(0) != 0, so every root of g must be strictly negative.
    auto sf = poly::squarefree_part(g);
    return poly::count_negative_real_roots(sf) == poly::degree(sf);
}

bool is_nilpotent(const CharPoly& p) {
    for (int j = 0; j < p.degree(); ++j)
        if (!p[j].is_zero()) return false;
    return true;
}

bool is_singular(const CharPoly& p) { return p.degree() > 0 && p[0].is_zero(); }

bool is_normal(const DenseMatrix& a) {
    DenseMatrix h = a.conjugate_transpose();
    return h * a == a * h;
}

bool is_normal(const HessMatrix& m) { return is_normal(to_dense(m)); }

std::string to_string(const NormalShape& s) {
    switch (s.kind) {
    case NormalShapeKind::Symmetric: return "SYMMETRIC";
    case NormalShapeKind::WSkewSymmetric: return "W_SKEW_SYMMETRIC(" + to_string(s.w) + ")";
    case NormalShapeKind::WSkewCirculant: return "W_SKEW_CIRCULANT(" + to_string(s.w) + ")";
    case NormalShapeKind::Other: break;
    }
    return "OTHER";
}

NormalShape classify_normal_shape(const HessMatrix& m, bool assert_normal) {
    if (assert_normal && !is_normal(m)) throw InvalidArgument("classify_normal_shape: matrix is not normal");
    const int n = m.n();
    const GaussInt& s = m.spec().subdiag;
    for (int i = 1; i <= n; ++i)
        if (!m.entry(i, i).is_zero()) return {};
    if (n == 1) return {NormalShapeKind::Symmetric, s};

    // w-skew symmetric: constant unit superdiagonal, nothing above it.
    const GaussInt w = m.entry(1, 2);
    bool band = w.is_unit();
    for (int j = 2; j <= n && band; ++j)
        for (int i = 1; i < j && band; ++i) band = (i == j - 1) ? m.entry(i, j) == w : m.entry(i, j).is_zero();
    if (band) {
        if (w == s) return {NormalShapeKind::Symmetric, w};
        return {NormalShapeKind::WSkewSymmetric, w};
    }

    // w-skew circulant: the corner h_{1,n} is the only nonzero upper entry.
    const GaussInt corner = m.entry(1, n);
    bool circ = corner.is_unit();
    for (int j = 2; j <= n && circ; ++j)
        for (int i = 1; i < j && circ; ++i)
            if (!(i == 1 && j == n)) circ = m.entry(i, j).is_zero();
    if (circ) return {NormalShapeKind::WSkewCirculant, corner};
    return {};
}

namespace {

struct Small {
    long long re = 0, im = 0;
};

class NormalSearch {
public:
    explicit NormalSearch(const FamilySpec& spec)
        : spec_(std::make_shared<const FamilySpec>(spec)), n_(spec.n), a_(static_cast<std::size_t>(n_ * n_)) {
        for (const auto& g : spec.population.elements()) {
            if (!g.re.fits_slong_p() || !g.im.fits_slong_p() || abs(g.re) > 1000000 || abs(g.im) > 1000000)
                throw InvalidArgument("find_normal_matrices: population entries too large");
            pop_.push_back({g.re.get_si(), g.im.get_si()});
        }
        s_ = {spec.subdiag.re.get_si(), spec.subdiag.im.get_si()};
        for (int i = 1; i < n_; ++i) at(i, i - 1) = s_;
    }

    std::vector<HessMatrix> run() {
        fill_row(0);
        return std::move(found_);
    }

private:
    Small& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    // C_{i,r} = sum_k conj(a_{k,i}) a_{k,r} - sum_k a_{i,k} conj(a_{r,k}), 0-based
    bool column_ok(int r) {
        for (int i = 0; i <= r; ++i) {
            long long re = 0, im = 0;
            for (int k = 0; k < n_; ++k) {
                const Small& x = at(k, i);
                const Small& y = at(k, r);
                re += x.re * y.re + x.im * y.im;
                im += x.re * y.im - x.im * y.re;
                const Small& u = at(i, k);
                const Small& v = at(r, k);
                re -= u.re * v.re + u.im * v.im;
                im -= u.im * v.re - u.re * v.im;
            }
            if (re != 0 || im != 0) return false;
        }
        return true;
    }

    void fill_row(int r) {
        if (r == n_) {
            emit();
            return;
        }
        const int first = spec_->zero_diagonal ? r + 1 : r;
        std::vector<std::size_t> digit(static_cast<std::size_t>(n_ - first), 0);
        while (true) {
            for (int j = first; j < n_; ++j) at(r, j) = pop_[digit[static_cast<std::size_t>(j - first)]];
            // rows below r are still zero except the subdiagonal entry a_{r+1,r}
            if (column_ok(r)) fill_row(r + 1);
            std::size_t k = 0;
            while (k < digit.size() && ++digit[k] == pop_.size()) digit[k++] = 0;
            if (k == digit.size()) break;
        }
        for (int j = first; j < n_; ++j) at(r, j) = {};
    }

    void emit() {
        std::vector<GaussInt> stored(spec_->storage_size());
        for (int j = 1; j <= n_; ++j)
            for (int i = 1; i <= j; ++i) {
                const Small& x = at(i - 1, j - 1);
                stored[upper_slot(i, j)] = GaussInt(x.re, x.im);
            }
        found_.emplace_back(spec_, std::move(stored));
    }

    std::shared_ptr<const FamilySpec> spec_;
    int n_;
    std::vector<Small> a_;
    std::vector<Small> pop_;
    Small s_;
    std::vector<HessMatrix> found_;
};

} // namespace

std::vector<HessMatrix> find_normal_matrices(const FamilySpec& spec) {
    spec.validate();
    if (spec.shape != Shape::UpperHessenberg) throw InvalidArgument("find_normal_matrices: upper Hessenberg only");
    return NormalSearch(spec).run();
}

int minimal_polynomial_degree(const DenseMatrix& a) {
    const int n = a.n;
    if (n > 8) throw GuardExceeded("minimal polynomial: n > 8");
    const std::size_t rows = static_cast<std::size_t>(n) * n;
    const std::size_t cols = static_cast<std::size_t>(n) + 1;
    // column k holds vec(A^k)
    std::vector<std::vector<GaussInt>> k(rows, std::vector<GaussInt>(cols));
    DenseMatrix p = DenseMatrix::identity(n);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) k[r][c] = p.a[r];
        if (c + 1 < cols) p = p * a;
    }
    // fraction-free row echelon form; the number of pivots is the rank
    std::size_t rank = 0;
    GaussInt prev(1);
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && k[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(k[piv], k[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j)
                k[r][j] = divexact(k[rank][c] * k[r][j] - k[r][c] * k[rank][j], prev);
            k[r][c] = GaussInt(0);
        }
        prev = k[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

bool is_nonderogatory(const DenseMatrix& a) { return minimal_polynomial_degree(a) == a.n; }

bool is_nonderogatory(const HessMatrix& m) { return is_nonderogatory(to_dense(m)); }

bool trace_prefilter(const HessMatrix& m) {
    if (!m.spec().population.is_real()) throw InvalidArgument("trace_prefilter: real populations only");
    BigInt t = 0;
    for (int i = 1; i <= m.n(); ++i) t += m.entry(i, i).re;
    return sgn(t) < 0;
}

ClassReport classify_database(const Cpdb& db) {
    ClassReport r;
    r.family = db.family();
    r.cpolys = db.size();
    db.for_each([&](const CpdbRecord& rec) {
        CharPoly p = rec.poly();
        r.n = p.degree();
        r.matrices += rec.matrix_count;
        if (is_nilpotent(p)) {
            ++r.nilpotent_polys;
            r.nilpotent_matrices += rec.matrix_count;
        }
        if (is_singular(p)) {
            ++r.singular_polys;
            r.singular_matrices += rec.matrix_count;
        }
        if (!p.is_real()) {
            r.real_coefficients = false;
            return;
        }
        if (is_neutral(p)) {
            ++r.neutral_polys;
            r.neutral_matrices += rec.matrix_count;
        }
        if (is_stable_type1(p)) {
            ++r.stable_polys;
            r.stable_matrices += rec.matrix_count;
        }
    });
    return r;
}

namespace {

std::vector<std::string> report_header() {
    return {"n", "matrices", "cpolys", "neutral_polys", "neutral_matrices", "stable_polys", "stable_matrices",
            "nilpotent_matrices", "singular_matrices", "distinct_real_eigs"};
}

std::vector<std::string> report_cells(const ClassReport& r) {
    auto opt = [&](bool real, const std::string& v) { return real ? v : std::string("-"); };
    return {std::to_string(r.n),
            r.matrices.get_str(),
            std::to_string(r.cpolys),
            opt(r.real_coefficients, std::to_string(r.neutral_polys)),
            opt(r.real_coefficients, r.neutral_matrices.get_str()),
            opt(r.real_coefficients, std::to_string(r.stable_polys)),
            opt(r.real_coefficients, r.stable_matrices.get_str()),
            r.nilpotent_matrices.get_str(),
            r.singular_matrices.get_str(),
            r.distinct_real_eigs ? std::to_string(*r.distinct_real_eigs) : std::string("-")};
}

} // namespace

std::string format_report_table(const std::vector<ClassReport>& rows) {
    std::vector<std::vector<std::string>> cells{report_header()};
    for (const auto& r : rows) cells.push_back(report_cells(r));
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            os << std::string(width[c] - row[c].size(), ' ') << row[c];
        }
        os << '\n';
    }
    return os.str();
}

std::string format_report_csv(const std::vector<ClassReport>& rows) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& v) {
        for (std::size_t c = 0; c < v.size(); ++c) os << (c ? "," : "") << v[c];
        os << '\n';
    };
    line(report_header());
    for (const auto& r : rows) line(report_cells(r));
    return os.str();
}

} // namespace bohm
