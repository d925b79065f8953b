#include "bohm/family.hpp"

#include "bohm/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bohm {

Population::Population(std::vector<GaussInt> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidArgument("population must be nonempty");
    for (std::size_t a = 0; a < elements_.size(); ++a) {
        for (std::size_t b = a + 1; b < elements_.size(); ++b)
            if (elements_[a] == elements_[b])
                throw InvalidArgument("duplicate population element " + to_string(elements_[a]));
        if (elements_[a].is_zero()) contains_zero_ = true;
    }
}

bool Population::contains(const GaussInt& g) const {
    return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

bool Population::is_real() const {
    return std::all_of(elements_.begin(), elements_.end(), [](const GaussInt& g) { return g.is_real(); });
}

bool Population::nonzero_are_units() const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [](const GaussInt& g) { return g.is_zero() || g.is_unit(); });
}

bool Population::invariant_under(const GaussInt& unit) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const GaussInt& g) { return contains(g * unit); });
}

Population parse_population(std::string_view text) {
    std::vector<GaussInt> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        out.push_back(parse_gauss_int(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return Population(std::move(out));
}

std::string to_string(const Population& p) {
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out += ',';
        out += to_string(p[k]);
    }
    return out;
}

void FamilySpec::validate() const {
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    if (shape == Shape::General) return;
    if (!subdiag.is_unit()) throw InvalidArgument("subdiagonal value must be a unit, got " + to_string(subdiag));
    if (zero_diagonal && !population.contains_zero())
        throw InvalidArgument("zero-diagonal family requires 0 in the population");
}

std::size_t FamilySpec::free_entry_count() const {
    auto un = static_cast<std::size_t>(n);
    if (shape == Shape::General) return un * un;
    return zero_diagonal ? un * (un - 1) / 2 : un * (un + 1) / 2;
}

std::size_t FamilySpec::storage_size() const {
    auto un = static_cast<std::size_t>(n);
    return shape == Shape::General ? un * un : un * (un + 1) / 2;
}

std::vector<std::size_t> FamilySpec::free_slots() const {
    std::vector<std::size_t> slots;
    slots.reserve(free_entry_count());
    if (shape == Shape::General) {
        for (std::size_t k = 0; k < storage_size(); ++k) slots.push_back(k);
        return slots;
    }
    for (int j = 1; j <= n; ++j) {
        int last = zero_diagonal ? j - 1 : j;
        for (int i = 1; i <= last; ++i) slots.push_back(upper_slot(i, j));
    }
    return slots;
}

FamilySpec make_hessenberg(int n, std::string_view population, long subdiag, bool zero_diagonal) {
    FamilySpec spec{n, parse_population(population), GaussInt(subdiag), zero_diagonal, Shape::UpperHessenberg};
    spec.validate();
    return spec;
}

FamilySpec make_general(int n, std::string_view population) {
    FamilySpec spec{n, parse_population(population), GaussInt(1), false, Shape::General};
    spec.validate();
    return spec;
}

std::string to_string(const FamilySpec& spec) {
    std::ostringstream os;
    os << "n=" << spec.n << " pop=" << to_string(spec.population);
    if (spec.shape == Shape::General) {
        os << " shape=general";
    } else {
        os << " s=" << to_string(spec.subdiag) << " diag=" << (spec.zero_diagonal ? "zero" : "free")
           << " shape=hessenberg";
    }
    return os.str();
}

FamilySpec parse_family_spec(std::string_view text) {
    FamilySpec spec;
    bool have_n = false;
    bool have_pop = false;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("bad family token '" + tok + "'");
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "n") {
            try {
                spec.n = std::stoi(val);
            } catch (const std::exception&) {
                throw ParseError("bad dimension '" + val + "'");
            }
            have_n = true;
        } else if (key == "pop") {
            spec.population = parse_population(val);
            have_pop = true;
        } else if (key == "s") {
            spec.subdiag = parse_gauss_int(val);
        } else if (key == "diag") {
            if (val != "zero" && val != "free") throw ParseError("bad diag value '" + val + "'");
            spec.zero_diagonal = val == "zero";
        } else if (key == "shape") {
            if (val == "hessenberg") spec.shape = Shape::UpperHessenberg;
            else if (val == "general") spec.shape = Shape::General;
            else throw ParseError("bad shape '" + val + "'");
        } else {
            throw ParseError("unknown family key '" + key + "'");
        }
    }
    if (!have_n || !have_pop) throw ParseError("family spec needs n= and pop=");
    spec.validate();
    return spec;
}

BigInt family_size(const FamilySpec& spec) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), spec.population.size(), spec.free_entry_count());
    return out;
}

HessMatrix::HessMatrix(std::shared_ptr<const FamilySpec> spec, std::vector<GaussInt> stored)
    : spec_(std::move(spec)), stored_(std::move(stored)) {
    if (stored_.size() != spec_->storage_size()) throw InvalidArgument("wrong number of stored entries");
    for (const auto& g : stored_)
        if (!spec_->population.contains(g)) throw InvalidArgument("entry " + to_string(g) + " not in population");
    if (spec_->zero_diagonal && spec_->shape == Shape::UpperHessenberg) {
        for (int i = 1; i <= spec_->n; ++i)
            if (!stored_[upper_slot(i, i)].is_zero()) throw InvalidArgument("nonzero diagonal in zero-diagonal family");
    }
}

HessMatrix HessMatrix::from_choices(std::shared_ptr<const FamilySpec> spec, std::span<const std::size_t> choices) {
    auto slots = spec->free_slots();
    if (choices.size() != slots.size()) throw InvalidArgument("wrong number of choices");
    std::vector<GaussInt> stored(spec->storage_size(), GaussInt(0));
    for (std::size_t k = 0; k < slots.size(); ++k) stored[slots[k]] = spec->population[choices[k]];
    return HessMatrix(std::move(spec), std::move(stored));
}

GaussInt HessMatrix::entry(int i, int j) const {
    const int n = spec_->n;
    if (i < 1 || j < 1 || i > n || j > n) throw std::out_of_range("matrix index out of range");
    if (spec_->shape == Shape::General) return stored_[static_cast<std::size_t>((j - 1) * n + (i - 1))];
    if (i <= j) return stored_[upper_slot(i, j)];
    if (i == j + 1) return spec_->subdiag;
    return GaussInt(0);
}

DenseMatrix DenseMatrix::identity(int dim) {
    DenseMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = GaussInt(1);
    return m;
}

DenseMatrix DenseMatrix::conjugate_transpose() const {
    DenseMatrix t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const GaussInt& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < x.n; ++j)
                if (!y(k, j).is_zero()) out(i, j) += xik * y(k, j);
        }
    return out;
}

DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix out = x;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] -= y.a[k];
    return out;
}

DenseMatrix to_dense(const HessMatrix& m) {
    DenseMatrix d(m.n());
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j) d(i - 1, j - 1) = m.entry(i, j);
    return d;
}

HessMatrix normalize_subdiagonal(const HessMatrix& m, SubdiagTarget target) {
    const FamilySpec& spec = m.spec();
    if (spec.shape != Shape::UpperHessenberg) throw InvalidArgument("normalize_subdiagonal needs Hessenberg shape");
    GaussInt t(target == SubdiagTarget::PlusOne ? 1 : -1);
    GaussInt u = spec.subdiag * t; // h_{i,j} picks up u^{j-i}
    if (!spec.population.invariant_under(u))
        throw InvalidArgument("population " + to_string(spec.population) + " not invariant under " + to_string(u));

    auto out_spec = std::make_shared<FamilySpec>(spec);
    out_spec->subdiag = t;
    if (spec.subdiag == t) return HessMatrix(std::move(out_spec), std::vector<GaussInt>(m.stored().begin(), m.stored().end()));

    std::vector<GaussInt> stored(spec.storage_size());
    for (int j = 1; j <= spec.n; ++j) {
        GaussInt factor(1);
        for (int i = j; i >= 1; --i) {
            stored[upper_slot(i, j)] = m.stored()[upper_slot(i, j)] * factor;
            factor *= u;
        }
    }
    return HessMatrix(std::move(out_spec), std::move(stored));
}

} // namespace bohm
