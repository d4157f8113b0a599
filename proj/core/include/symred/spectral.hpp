#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace symred {

// Periodic cube [0, L)^3 sampled at N points per axis. Grid values are stored
// row-major over (ix, iy, iz) with iz fastest.
struct GridSpec {
  int n = 32;
  double length = 6.283185307179586;

  // Throws ConfigurationError unless n >= 8 is a power of two and length > 0.
  void validate() const;
  std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }
  // Half-spectrum size n * n * (n/2 + 1).
  std::size_t modes() const { return static_cast<std::size_t>(n) * n * (n / 2 + 1); }
  double spacing() const { return length / n; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  double coordinate(int index) const { return index * spacing(); }
  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
  }
  bool operator==(const GridSpec&) const = default;
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> data;

  explicit ScalarField(const GridSpec& g) : grid(g), data(g.points(), 0.0) {}
};

struct VectorField {
  GridSpec grid;
  std::array<std::vector<double>, 3> c;

  explicit VectorField(const GridSpec& g)
      : grid(g), c{std::vector<double>(g.points(), 0.0), std::vector<double>(g.points(), 0.0),
                   std::vector<double>(g.points(), 0.0)} {}

  VectorField& operator+=(const VectorField& other);
  VectorField& operator*=(double factor);
  double max_abs() const;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

using Spectrum = std::vector<std::complex<double>>;

struct VectorSpectrum {
  GridSpec grid;
  std::array<Spectrum, 3> c;
};

// One Fourier mode of the half spectrum. `k` is the angular wave vector used
// for differentiation: Nyquist components are zeroed so that derivatives of
// real fields stay real. `weight` counts the conjugate partner (1 or 2) for
// Parseval sums. `resolved` is false for the mean and any Nyquist-bearing mode.
struct Mode {
  std::size_t index;
  std::array<double, 3> k;
  double weight;
  bool resolved;
};

// Cached mode table for a grid.
const std::vector<Mode>& mode_table(const GridSpec& grid);

Spectrum forward(const GridSpec& grid, const std::vector<double>& values);
// Normalised inverse: inverse(forward(f)) == f.
std::vector<double> inverse(const GridSpec& grid, const Spectrum& spectrum);

VectorSpectrum forward(const VectorField& field);
VectorField inverse(const VectorSpectrum& spectrum);
ScalarField inverse_scalar(const GridSpec& grid, const Spectrum& spectrum);

// (f, g) = integral of f . g over the torus, by Parseval on half spectra of
// real fields.
double inner_product(const VectorSpectrum& f, const VectorSpectrum& g);

}  // namespace symred
