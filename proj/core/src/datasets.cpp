#include "qdigest/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qdigest/error.hpp"
#include "qdigest/random.hpp"

namespace qdigest::datasets {

std::vector<std::uint64_t> uniform_readings(std::size_t n, std::uint64_t sigma, std::uint64_t seed) {
  if (sigma == 0) throw DomainError("sigma must be positive");
  Rng rng(seed);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = rng.uniform_int(1, sigma);
  return out;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::vector<std::int64_t> parse_ints(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<std::int64_t> out;
  std::string token;
  while (ss >> token) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ParseError(line_no, "not an integer: '" + token + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ElevationGrid parse_grid(std::istream& in, std::uint64_t sigma) {
  if (sigma == 0) throw DomainError("sigma must be positive");
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing 'width height' header");
  const auto header = parse_ints(line, line_no);
  if (header.size() != 2 || header[0] <= 0 || header[1] <= 0)
    throw ParseError(line_no, "header must be two positive integers 'width height'");

  ElevationGrid grid;
  grid.width = static_cast<std::size_t>(header[0]);
  grid.height = static_cast<std::size_t>(header[1]);
  grid.sigma = sigma;
  std::vector<std::int64_t> raw;
  raw.reserve(grid.width * grid.height);
  for (std::size_t row = 0; row < grid.height; ++row) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no + 1, "expected " + std::to_string(grid.height) + " rows, found " + std::to_string(row));
    const auto values = parse_ints(line, line_no);
    if (values.size() != grid.width)
      throw ParseError(line_no, "row has " + std::to_string(values.size()) + " values, expected " +
                                    std::to_string(grid.width));
    raw.insert(raw.end(), values.begin(), values.end());
  }
  if (next_content_line(in, line, line_no)) throw ParseError(line_no, "unexpected data after the last row");

  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  grid.raw_min = *lo;
  grid.raw_max = *hi;
  const long double span = static_cast<long double>(grid.raw_max) - static_cast<long double>(grid.raw_min);
  grid.cells.reserve(raw.size());
  for (auto e : raw) {
    if (span == 0) {
      grid.cells.push_back(1);
      continue;
    }
    const long double t = (static_cast<long double>(e) - grid.raw_min) / span;
    grid.cells.push_back(1 + static_cast<std::uint64_t>(std::llround(t * static_cast<long double>(sigma - 1))));
  }
  return grid;
}

ElevationGrid load_grid(const std::string& path, std::uint64_t sigma) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open grid file '" + path + "'");
  return parse_grid(in, sigma);
}

std::vector<std::uint64_t> terrain_readings(const ElevationGrid& grid, const netsim::Topology& t) {
  std::vector<std::uint64_t> out;
  out.reserve(t.size());
  auto cell = [&](double coord, std::size_t cells) {
    if (!(t.side > 0)) return std::size_t{0};
    const double scaled = std::floor(coord / t.side * static_cast<double>(cells));
    return static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(cells - 1)));
  };
  for (const auto& p : t.positions) out.push_back(grid.at(cell(p.x, grid.width), cell(p.y, grid.height)));
  return out;
}

void write_two_plateau_grid(std::ostream& out, std::size_t width, std::size_t height) {
  out << width << ' ' << height << '\n';
  for (std::size_t row = 0; row < height; ++row) {
    const double v = (static_cast<double>(row) + 0.5) / static_cast<double>(height);
    for (std::size_t col = 0; col < width; ++col) {
      const double u = (static_cast<double>(col) + 0.5) / static_cast<double>(width);
      double elevation = 400.0 + 1400.0 * (0.6 * u + 0.4 * v) + 150.0 * std::sin(6.0 * u) * std::cos(5.0 * v);
      if (std::hypot(u - 0.15, v - 0.15) < 0.2) elevation = 0.0;        // basin
      if (std::hypot(u - 0.55, v - 0.5) < 0.2) elevation = 700.0;       // plateau
      out << (col ? " " : "") << std::lround(elevation);
    }
    out << '\n';
  }
}

void write_readings(std::ostream& out, std::span<const std::uint64_t> readings) {
  for (auto r : readings) out << r << '\n';
}

std::vector<std::uint64_t> read_readings(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (next_content_line(in, line, line_no)) {
    const auto values = parse_ints(line, line_no);
    if (values.size() != 1 || values[0] <= 0) throw ParseError(line_no, "expected one positive integer");
    out.push_back(static_cast<std::uint64_t>(values[0]));
  }
  return out;
}

}  // namespace qdigest::datasets
