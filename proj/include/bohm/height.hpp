#pragma once

#include "bohm/charpoly.hpp"
#include "bohm/family.hpp"

#include <iosfwd>
#include <vector>

namespace bohm {

/// Toeplitz upper Hessenberg matrix with s = 1 and every h_{i,j} = -1, a
/// member of the {-1,0,1} family of maximal characteristic height.
HessMatrix max_height_witness(int n);

/// Toeplitz matrix over the population {a, b} with s = 1 and diagonal values
/// t_k = h_{i,i+k-1}: a for even k, b for odd k (k = 1 is the main diagonal).
HessMatrix two_point_witness(int n, const GaussInt& a, const GaussInt& b);

/// True when s^(k-1) h_{i,i+k-1} = -1 for every stored entry, or the same
/// holds for -m (the negation-equivalent pattern). With ignore_corner, h_{1,n}
/// may take any value (it only shifts the constant coefficient).
bool is_max_height_pattern(const HessMatrix& m, bool ignore_corner = false);

enum class HeightMode { Exact, LogFloat };

/// tau_n for n = 1..N, the characteristic heights of max_height_witness(n).
struct HeightSeries {
    HeightMode mode = HeightMode::Exact;
    std::vector<BigInt> taus;     // Exact: taus[n-1] = tau_n
    std::vector<double> log_taus; // both modes: log(tau_n)

    [[nodiscard]] int size() const { return static_cast<int>(log_taus.size()); }
    [[nodiscard]] double log_tau(int n) const { return log_taus[static_cast<std::size_t>(n - 1)]; }
    /// log tau_{n+1} - log tau_n
    [[nodiscard]] double log_ratio(int n) const { return log_tau(n + 1) - log_tau(n); }
};

/// Exact mode keeps big integers and is limited to N <= 2000. LogFloat keeps one
/// scaled row of doubles plus a log offset and runs to N <= 50000.
/// Throws GuardExceeded beyond these limits and InvalidArgument for N < 2.
HeightSeries tau_series(int N, HeightMode mode);

/// log(1 + golden ratio)
double log_one_plus_phi();

struct GrowthConstant {
    /// tau_N / (1+phi)^N at the last computed N
    double plain = 0;
    /// tau_N sqrt(N) / (1+phi)^N; this one settles where the plain ratio keeps drifting
    double sqrt_corrected = 0;
};

/// Empirical estimates of the constant in tau_n ~ C (1+phi)^n.
GrowthConstant estimate_growth_constant(const HeightSeries& s);

/// Smallest m such that |log_ratio(n) - log(1+phi)| <= tol for every n in [m, N-1].
int convergence_onset(const HeightSeries& s, double tol);

/// CSV "n,log_ratio" rows for n = 1..N-1.
void write_tau_csv(const HeightSeries& s, std::ostream& os);

struct MaxHeightReport {
    int n = 0;
    BigInt max_height = 0;
    BigInt witness_height = 0;
    /// Members of the s = +1 and s = -1 families of {-1,0,1} attaining max_height.
    std::vector<HessMatrix> attaining;
    /// All four pattern matrices (two per subdiagonal sign) attain the maximum.
    bool patterns_attain = false;
    /// Attaining matrices outside the exact pattern, and outside it even with a free corner.
    std::size_t outside_pattern = 0;
    std::size_t outside_pattern_free_corner = 0;

    [[nodiscard]] bool ok() const { return witness_height == max_height && patterns_attain; }
};

/// Exhaustive check over both subdiagonal signs, n <= 5.
MaxHeightReport verify_max_height(int n);

} // namespace bohm
