#pragma once

// Depth-first enumeration over the columns of an upper Hessenberg family.
//
// Column r holds the free entries h_{1,r}..h_{r,r}. Choosing column r turns
// Q_0..Q_{r-1} into Q_r by the coefficient recurrence
//   Q_r = z Q_{r-1} - sum_i s^{r-i} h_{i,r} Q_{i-1},
// so every descendant of a column prefix shares its Q stack. Within a column
// the entries advance like an odometer with row 1 fastest; changing h_{i,r}
// only subtracts (delta w) * Q_{i-1} from Q_r, which costs i operations.

#include "bohm/charpoly.hpp"
#include "bohm/family.hpp"
#include "bohm/scalar.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bohm::detail {

template <class Scalar>
class ColumnDfs {
public:
    /// `pinned` fixes the population indices of the first pinned.size() free
    /// entries (column-major order).
    ColumnDfs(const FamilySpec& spec, std::span<const std::size_t> pinned) : n_(spec.n) {
        const auto spow = unit_powers(spec.subdiag, spec.n);
        const std::size_t psize = spec.population.size();
        columns_.resize(static_cast<std::size_t>(n_) + 1);
        std::size_t free_index = 0;
        for (int r = 1; r <= n_; ++r) {
            const int last = spec.zero_diagonal ? r - 1 : r;
            for (int i = 1; i <= last; ++i, ++free_index) {
                Entry e;
                e.row = i;
                e.free_index = free_index;
                e.weight.reserve(psize);
                for (std::size_t p = 0; p < psize; ++p)
                    e.weight.push_back(Scalar::from(spow[static_cast<std::size_t>(r - i)] * spec.population[p]));
                if (free_index < pinned.size()) {
                    e.lo = e.hi = pinned[free_index];
                } else {
                    e.lo = 0;
                    e.hi = psize - 1;
                }
                columns_[static_cast<std::size_t>(r)].push_back(std::move(e));
            }
        }
        choices_.assign(free_index, 0);
        q_.resize(static_cast<std::size_t>(n_) + 1);
        for (int r = 0; r <= n_; ++r) q_[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(r) + 1, Scalar{});
        q_[0][0] = Scalar::from(GaussInt(1));
    }

    /// Calls leaf(choices, coeffs) once per member; coeffs has n+1 entries.
    template <class Leaf>
    std::uint64_t run(Leaf&& leaf) {
        visits_ = 0;
        column(1, leaf);
        return visits_;
    }

private:
    struct Entry {
        int row = 0;
        std::size_t free_index = 0;
        std::vector<Scalar> weight; // s^{r-i} * P[p]
        std::size_t lo = 0;
        std::size_t hi = 0;
    };

    void recompute(int r) {
        auto& qr = q_[static_cast<std::size_t>(r)];
        const auto& prev = q_[static_cast<std::size_t>(r - 1)];
        qr[0] = Scalar{};
        for (int j = 1; j <= r; ++j) qr[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j - 1)];
        for (const Entry& e : columns_[static_cast<std::size_t>(r)]) {
            const Scalar& w = e.weight[choices_[e.free_index]];
            if (w.is_zero()) continue;
            const auto& qi = q_[static_cast<std::size_t>(e.row - 1)];
            for (int j = 0; j < e.row; ++j) fused_sub(qr[static_cast<std::size_t>(j)], w, qi[static_cast<std::size_t>(j)]);
        }
    }

    void change(int r, const Entry& e, std::size_t from, std::size_t to) {
        Scalar delta = e.weight[to] - e.weight[from];
        if (delta.is_zero()) return;
        auto& qr = q_[static_cast<std::size_t>(r)];
        const auto& qi = q_[static_cast<std::size_t>(e.row - 1)];
        for (int j = 0; j < e.row; ++j) fused_sub(qr[static_cast<std::size_t>(j)], delta, qi[static_cast<std::size_t>(j)]);
    }

    template <class Leaf>
    void column(int r, Leaf& leaf) {
        auto& entries = columns_[static_cast<std::size_t>(r)];
        for (const Entry& e : entries) choices_[e.free_index] = e.lo;
        recompute(r);
        for (;;) {
            if (r == n_) {
                leaf(std::span<const std::size_t>(choices_), std::span<const Scalar>(q_[static_cast<std::size_t>(r)]));
                ++visits_;
            } else {
                column(r + 1, leaf);
            }
            std::size_t k = 0;
            for (; k < entries.size(); ++k) {
                const Entry& e = entries[k];
                std::size_t& d = choices_[e.free_index];
                if (d < e.hi) {
                    change(r, e, d, d + 1);
                    ++d;
                    break;
                }
                if (d != e.lo) {
                    change(r, e, d, e.lo);
                    d = e.lo;
                }
            }
            if (k == entries.size()) break;
        }
    }

    int n_;
    std::vector<std::vector<Entry>> columns_;
    std::vector<std::vector<Scalar>> q_;
    std::vector<std::size_t> choices_;
    std::uint64_t visits_ = 0;
};

} // namespace bohm::detail
