#pragma once

#include "bohm/cpdb.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bohm {

/// Hit counts over a rectangular window of the complex plane. Row 0 is the
/// bottom row (im_min); column 0 is re_min.
struct DensityGrid {
    double re_min = -3.5, re_max = 3.5, im_min = -3.5, im_max = 3.5;
    int width = 2048, height = 2048;
    std::vector<std::uint64_t> bins;
    std::uint64_t overflow = 0;

    DensityGrid() = default;
    /// Throws InvalidArgument for an empty window or size.
    DensityGrid(double re_min, double re_max, double im_min, double im_max, int width, int height);

    [[nodiscard]] std::uint64_t at(int x, int y) const { return bins[index(x, y)]; }
    [[nodiscard]] std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
    }
    [[nodiscard]] double re_center(int x) const;
    [[nodiscard]] double im_center(int y) const;
    [[nodiscard]] std::uint64_t total() const;
    [[nodiscard]] std::uint64_t max_hits() const;

    /// Adds `w` to the pixel holding (re, im), or to the overflow tally.
    void add(double re, double im, std::uint64_t w);
    /// Elementwise sum; the windows must agree.
    void merge(const DensityGrid& other);
};

/// The default [-3.5, 3.5]^2 window at 2048 x 2048.
DensityGrid default_grid();

enum class Weighting { ByMatrixCount, Unit };

/// Adds every root of every record: matrix_count * multiplicity, or 1 per root.
void accumulate(DensityGrid& grid, const Cpdb& db, Weighting w = Weighting::ByMatrixCount, unsigned threads = 1);

enum class Palette { Gray, Fire };

/// (log(1 + hits) / log(1 + max))^gamma, 0 for an all-zero grid.
double intensity(std::uint64_t hits, std::uint64_t max, double gamma);

/// Binary PGM (Gray) or PPM (Fire), top row = im_max.
void write_image(const DensityGrid& grid, Palette palette, double gamma, std::ostream& os);
void write_image(const DensityGrid& grid, Palette palette, double gamma, const std::string& path);

/// CSV "re_center,im_center,hits" for nonzero bins, bottom row first.
void write_bins_csv(const DensityGrid& grid, std::ostream& os);

} // namespace bohm
