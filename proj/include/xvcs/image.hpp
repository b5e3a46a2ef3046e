#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "xvcs/bitmatrix.hpp"
#include "xvcs/rational.hpp"
#include "xvcs/scheme.hpp"

namespace xvcs {

// Binary raster, 1 = black (matching the PBM convention).
struct ShareImage {
    BitMatrix raster;  // rows = height, cols = width

    ShareImage() = default;
    ShareImage(int width, int height) : raster(height, width) {}
    explicit ShareImage(BitMatrix r) : raster(std::move(r)) {}

    int width() const { return raster.cols(); }
    int height() const { return raster.rows(); }
    bool get(int x, int y) const { return raster.get(y, x); }
    void set(int x, int y, bool black) { raster.set(y, x, black); }

    friend bool operator==(const ShareImage&, const ShareImage&) = default;
};

ShareImage read_pbm(std::istream& in);
ShareImage read_pbm(const std::filesystem::path& path);
void write_pbm(std::ostream& out, const ShareImage& img, bool ascii = false);
void write_pbm(const std::filesystem::path& path, const ShareImage& img, bool ascii = false);

// How the m subpixels of one secret pixel are placed in a share.
struct SubpixelLayout {
    enum class Mode { HorizontalStrip, Block };
    Mode mode = Mode::HorizontalStrip;
    int block_rows = 1;  // Block mode: block_rows * block_cols == m
    int block_cols = 1;

    static SubpixelLayout strip() { return {}; }
    // near-square block: rows = largest divisor of m not above sqrt(m)
    static SubpixelLayout block_for(int m);

    int width_scale(int m) const { return mode == Mode::HorizontalStrip ? m : block_cols; }
    int height_scale(int /*m*/) const { return mode == Mode::HorizontalStrip ? 1 : block_rows; }
    // subpixel index c -> offset within the block
    int x_off(int c, int /*m*/) const { return mode == Mode::HorizontalStrip ? c : c % block_cols; }
    int y_off(int c, int /*m*/) const { return mode == Mode::HorizontalStrip ? 0 : c / block_cols; }

    void validate(int m) const;
};

// Per secret pixel, samples a share matrix uniformly from the white (black)
// collection and scatters row i to participant i's subpixels. Randomness is
// derived from (seed, x, y) only, so the output is independent of traversal
// order and any single pixel can be re-derived in isolation.
std::vector<ShareImage> encode(const ShareImage& secret, const LinearScheme& s,
                               const SubpixelLayout& layout, std::uint64_t seed);

// Pixel-wise XOR of equally sized rasters.
ShareImage stack_images(const std::vector<ShareImage>& shares);

struct NoiseReport {
    Rational overall;  // fraction of secret pixels whose block deviates
    Rational white;    // fraction among white secret pixels
    Rational black;    // fraction among black secret pixels
};

// Compares every reconstructed subpixel block against the reference stacks
// of the first system (for a static scheme these are the unique stacks).
// Requires the stack for q to be determined.
NoiseReport measure_noise(const ShareImage& reconstructed, const ShareImage& secret,
                          const LinearScheme& s, const Subset& q, const SubpixelLayout& layout);

// Maps each block back to a secret pixel: white iff it equals the white
// reference stack. Inverts encode() exactly for noise-free schemes.
ShareImage decode_by_template(const ShareImage& reconstructed, const LinearScheme& s,
                              const Subset& q, const SubpixelLayout& layout);

}  // namespace xvcs
