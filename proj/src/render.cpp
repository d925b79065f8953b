#include "bohm/render.hpp"

#include "bohm/errors.hpp"
#include "bohm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bohm {

DensityGrid::DensityGrid(double re_lo, double re_hi, double im_lo, double im_hi, int w, int h)
    : re_min(re_lo), re_max(re_hi), im_min(im_lo), im_max(im_hi), width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("DensityGrid: width and height must be >= 1");
    if (!(re_lo < re_hi) || !(im_lo < im_hi)) throw InvalidArgument("DensityGrid: empty window");
    bins.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
}

DensityGrid default_grid() { return DensityGrid(-3.5, 3.5, -3.5, 3.5, 2048, 2048); }

double DensityGrid::re_center(int x) const { return re_min + (x + 0.5) * (re_max - re_min) / width; }
double DensityGrid::im_center(int y) const { return im_min + (y + 0.5) * (im_max - im_min) / height; }

std::uint64_t DensityGrid::total() const { return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0}); }

std::uint64_t DensityGrid::max_hits() const { return bins.empty() ? 0 : *std::max_element(bins.begin(), bins.end()); }

void DensityGrid::add(double re, double im, std::uint64_t w) {
    const double fx = std::floor((re - re_min) / (re_max - re_min) * width);
    const double fy = std::floor((im - im_min) / (im_max - im_min) * height);
    if (!(fx >= 0 && fx < width && fy >= 0 && fy < height)) {
        overflow += w;
        return;
    }
    bins[index(static_cast<int>(fx), static_cast<int>(fy))] += w;
}

void DensityGrid::merge(const DensityGrid& other) {
    if (other.width != width || other.height != height || other.re_min != re_min || other.re_max != re_max ||
        other.im_min != im_min || other.im_max != im_max)
        throw InvalidArgument("DensityGrid::merge: windows differ");
    for (std::size_t k = 0; k < bins.size(); ++k) bins[k] += other.bins[k];
    overflow += other.overflow;
}

void accumulate(DensityGrid& grid, const Cpdb& db, Weighting w, unsigned threads) {
    for (const auto& [rec, rs] : solve_database(db, threads)) {
        if (!rec->matrix_count.fits_ulong_p()) throw GuardExceeded("accumulate: matrix count exceeds 64 bits");
        const std::uint64_t count = rec->matrix_count.get_ui();
        for (const auto& r : rs.roots)
            grid.add(r.value.real(), r.value.imag(),
                     w == Weighting::Unit ? 1 : count * static_cast<std::uint64_t>(r.multiplicity));
    }
}

double intensity(std::uint64_t hits, std::uint64_t max, double gamma) {
    if (max == 0 || hits == 0) return 0;
    return std::pow(std::log1p(static_cast<double>(hits)) / std::log1p(static_cast<double>(max)), gamma);
}

namespace {

// black -> red -> yellow -> white
void fire(double v, unsigned char* rgb) {
    const double r = std::clamp(3 * v, 0.0, 1.0);
    const double g = std::clamp(3 * v - 1, 0.0, 1.0);
    const double b = std::clamp(3 * v - 2, 0.0, 1.0);
    rgb[0] = static_cast<unsigned char>(std::lround(255 * r));
    rgb[1] = static_cast<unsigned char>(std::lround(255 * g));
    rgb[2] = static_cast<unsigned char>(std::lround(255 * b));
}

} // namespace

void write_image(const DensityGrid& grid, Palette palette, double gamma, std::ostream& os) {
    const int channels = palette == Palette::Gray ? 1 : 3;
    os << (channels == 1 ? "P5" : "P6") << '\n' << grid.width << ' ' << grid.height << "\n255\n";
    const std::uint64_t max = grid.max_hits();
    std::vector<unsigned char> row(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(channels));
    for (int y = grid.height - 1; y >= 0; --y) {
        for (int x = 0; x < grid.width; ++x) {
            const double v = intensity(grid.at(x, y), max, gamma);
            unsigned char* px = &row[static_cast<std::size_t>(x) * static_cast<std::size_t>(channels)];
            if (channels == 1) *px = static_cast<unsigned char>(std::lround(255 * v));
            else fire(v, px);
        }
        os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

void write_image(const DensityGrid& grid, Palette palette, double gamma, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_image: cannot open " + path);
    write_image(grid, palette, gamma, f);
    f.flush();
    if (!f) throw std::runtime_error("write_image: write failed for " + path);
}

void write_bins_csv(const DensityGrid& grid, std::ostream& os) {
    os << "re_center,im_center,hits\n";
    char buf[96];
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x)
            if (const auto h = grid.at(x, y)) {
                std::snprintf(buf, sizeof buf, "%.10g,%.10g,%llu\n", grid.re_center(x), grid.im_center(y),
                              static_cast<unsigned long long>(h));
                os << buf;
            }
}

} // namespace bohm
