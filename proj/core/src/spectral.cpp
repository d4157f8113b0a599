#include "symred/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "symred/error.hpp"

namespace symred {

void GridSpec::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ConfigurationError("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0)) throw ConfigurationError("grid length must be positive");
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (!(other.grid == grid)) throw ShapeError("vector fields live on different grids");
  for (int d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < c[d].size(); ++i) c[d][i] += other.c[d][i];
  }
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (auto& comp : c) {
    for (double& v : comp) v *= factor;
  }
  return *this;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& comp : c) {
    for (double v : comp) m = std::max(m, std::abs(v));
  }
  return m;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }

VectorField operator-(VectorField a, const VectorField& b) {
  VectorField nb = b;
  nb *= -1.0;
  return a += nb;
}

VectorField operator*(double factor, VectorField a) { return a *= factor; }

namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::vector<Mode> modes;

  ~Plans() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

struct Buffer {
  explicit Buffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* ptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double wavenumber(int index, int n, double unit) {
  if (2 * index == n) return 0.0;
  const int signed_index = 2 * index < n ? index : index - n;
  return unit * signed_index;
}

const Plans& plans_for(const GridSpec& grid) {
  grid.validate();
  static std::map<int, std::unique_ptr<Plans>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto& slot = cache[grid.n];
  if (!slot) {
    auto p = std::make_unique<Plans>();
    const int n = grid.n;
    Buffer real(sizeof(double) * grid.points());
    Buffer cplx(sizeof(fftw_complex) * grid.modes());
    p->r2c = fftw_plan_dft_r2c_3d(n, n, n, static_cast<double*>(real.ptr),
                                  static_cast<fftw_complex*>(cplx.ptr), FFTW_ESTIMATE);
    p->c2r = fftw_plan_dft_c2r_3d(n, n, n, static_cast<fftw_complex*>(cplx.ptr),
                                  static_cast<double*>(real.ptr), FFTW_ESTIMATE);
    slot = std::move(p);
  }
  return *slot;
}

}  // namespace

const std::vector<Mode>& mode_table(const GridSpec& grid) {
  // Wave vectors depend on L as well as N, so the table is cached per grid.
  static std::mutex m;
  static std::map<std::pair<int, double>, std::vector<Mode>> cache;
  grid.validate();
  std::lock_guard<std::mutex> lock(m);
  auto& table = cache[{grid.n, grid.length}];
  if (table.empty()) {
    const int n = grid.n;
    const int nh = n / 2 + 1;
    const double unit = 2.0 * std::numbers::pi / grid.length;
    table.reserve(grid.modes());
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        for (int iz = 0; iz < nh; ++iz) {
          Mode mode;
          mode.index = (static_cast<std::size_t>(ix) * n + iy) * nh + iz;
          mode.k = {wavenumber(ix, n, unit), wavenumber(iy, n, unit), wavenumber(iz, n, unit)};
          mode.weight = (iz == 0 || 2 * iz == n) ? 1.0 : 2.0;
          const bool nyquist = 2 * ix == n || 2 * iy == n || 2 * iz == n;
          const bool mean = ix == 0 && iy == 0 && iz == 0;
          mode.resolved = !nyquist && !mean;
          table.push_back(mode);
        }
      }
    }
  }
  return table;
}

Spectrum forward(const GridSpec& grid, const std::vector<double>& values) {
  if (values.size() != grid.points()) throw ShapeError("grid field has the wrong size");
  const Plans& p = plans_for(grid);
  Buffer real(sizeof(double) * grid.points());
  Buffer cplx(sizeof(fftw_complex) * grid.modes());
  std::copy(values.begin(), values.end(), static_cast<double*>(real.ptr));
  fftw_execute_dft_r2c(p.r2c, static_cast<double*>(real.ptr), static_cast<fftw_complex*>(cplx.ptr));
  const auto* out = static_cast<const std::complex<double>*>(cplx.ptr);
  return Spectrum(out, out + grid.modes());
}

std::vector<double> inverse(const GridSpec& grid, const Spectrum& spectrum) {
  if (spectrum.size() != grid.modes()) throw ShapeError("spectrum has the wrong size");
  const Plans& p = plans_for(grid);
  Buffer real(sizeof(double) * grid.points());
  Buffer cplx(sizeof(fftw_complex) * grid.modes());
  std::copy(spectrum.begin(), spectrum.end(), static_cast<std::complex<double>*>(cplx.ptr));
  fftw_execute_dft_c2r(p.c2r, static_cast<fftw_complex*>(cplx.ptr), static_cast<double*>(real.ptr));
  const double scale = 1.0 / static_cast<double>(grid.points());
  const auto* r = static_cast<const double*>(real.ptr);
  std::vector<double> out(grid.points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] * scale;
  return out;
}

VectorSpectrum forward(const VectorField& field) {
  VectorSpectrum s{field.grid, {}};
  for (int d = 0; d < 3; ++d) s.c[d] = forward(field.grid, field.c[d]);
  return s;
}

VectorField inverse(const VectorSpectrum& spectrum) {
  VectorField f(spectrum.grid);
  for (int d = 0; d < 3; ++d) f.c[d] = inverse(spectrum.grid, spectrum.c[d]);
  return f;
}

ScalarField inverse_scalar(const GridSpec& grid, const Spectrum& spectrum) {
  ScalarField f(grid);
  f.data = inverse(grid, spectrum);
  return f;
}

double inner_product(const VectorSpectrum& f, const VectorSpectrum& g) {
  if (!(f.grid == g.grid)) throw ShapeError("spectra live on different grids");
  double sum = 0.0;
  for (const Mode& m : mode_table(f.grid)) {
    for (int d = 0; d < 3; ++d) {
      sum += m.weight * std::real(std::conj(f.c[d][m.index]) * g.c[d][m.index]);
    }
  }
  const double n3 = static_cast<double>(f.grid.points());
  return sum * f.grid.cell_volume() / n3;
}

}  // namespace symred
