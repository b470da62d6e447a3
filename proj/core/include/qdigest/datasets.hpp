#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qdigest/netsim.hpp"

namespace qdigest::datasets {

/// n i.i.d. uniform readings in [1, sigma].
std::vector<std::uint64_t> uniform_readings(std::size_t n, std::uint64_t sigma, std::uint64_t seed);

/// Row-major elevation raster, already rescaled to [1, sigma].
struct ElevationGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::int64_t raw_min = 0;  ///< elevation mapped to 1
  std::int64_t raw_max = 0;  ///< elevation mapped to sigma
  std::uint64_t sigma = 0;
  std::vector<std::uint64_t> cells;

  std::uint64_t at(std::size_t col, std::size_t row) const { return cells[row * width + col]; }
};

/// Parses "width height" followed by `height` rows of `width` integers
/// ('#' starts a comment) and rescales linearly so the lowest cell maps to 1
/// and the highest to sigma.
/// A constant grid maps every cell to 1. Throws ParseError with the line
/// number on malformed input.
ElevationGrid parse_grid(std::istream& in, std::uint64_t sigma);
ElevationGrid load_grid(const std::string& path, std::uint64_t sigma);

/// Each sensor reads the cell containing it; positions in [0, side] are
/// scaled onto the grid with floor, the far edge clamped to the last cell.
std::vector<std::uint64_t> terrain_readings(const ElevationGrid& grid, const netsim::Topology& t);

/// Synthetic correlated terrain in raw elevation units: a sloping surface
/// with a low flat basin in the lower-left corner and a raised flat
/// plateau in the centre, written in the grid text format.
void write_two_plateau_grid(std::ostream& out, std::size_t width, std::size_t height);

/// One integer per line.
void write_readings(std::ostream& out, std::span<const std::uint64_t> readings);
std::vector<std::uint64_t> read_readings(std::istream& in);

}  // namespace qdigest::datasets
