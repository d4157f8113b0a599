#include "symred/maxwell_field.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "symred/error.hpp"
#include "symred/sampling.hpp"
#include "symred/term_field.hpp"

namespace symred {

namespace {

using cd = std::complex<double>;

// i z without the general complex product.
cd times_i(const cd& z) { return {-z.imag(), z.real()}; }

struct CVec {
  cd x, y, z;
};

CVec cross_k(const std::array<double, 3>& k, const CVec& v) {
  // i k x v
  return {times_i(k[1] * v.z - k[2] * v.y), times_i(k[2] * v.x - k[0] * v.z),
          times_i(k[0] * v.y - k[1] * v.x)};
}

CVec get(const VectorSpectrum& s, std::size_t i) { return {s.c[0][i], s.c[1][i], s.c[2][i]}; }

void put(VectorSpectrum& s, std::size_t i, const CVec& v) {
  s.c[0][i] = v.x;
  s.c[1][i] = v.y;
  s.c[2][i] = v.z;
}

CVec operator+(const CVec& a, const CVec& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
CVec operator*(double f, const CVec& a) { return {f * a.x, f * a.y, f * a.z}; }

double k2(const std::array<double, 3>& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

VectorSpectrum zeros_like(const GridSpec& grid) {
  VectorSpectrum s{grid, {}};
  for (auto& c : s.c) c.assign(grid.modes(), cd(0.0, 0.0));
  return s;
}

VectorSpectrum curl_hat(const VectorSpectrum& f) {
  VectorSpectrum out = zeros_like(f.grid);
  for (const Mode& m : mode_table(f.grid)) put(out, m.index, cross_k(m.k, get(f, m.index)));
  return out;
}

// Inverse curl on resolved modes, without range checks.
VectorSpectrum inverse_curl_hat(const VectorSpectrum& f) {
  VectorSpectrum out = zeros_like(f.grid);
  for (const Mode& m : mode_table(f.grid)) {
    if (!m.resolved) continue;
    put(out, m.index, (1.0 / k2(m.k)) * cross_k(m.k, get(f, m.index)));
  }
  return out;
}

Spectrum div_hat(const VectorSpectrum& f) {
  Spectrum out(f.grid.modes(), cd(0.0, 0.0));
  for (const Mode& m : mode_table(f.grid)) {
    const CVec v = get(f, m.index);
    out[m.index] = times_i(m.k[0] * v.x + m.k[1] * v.y + m.k[2] * v.z);
  }
  return out;
}

// ((rot E, E) + (rot B, B)) / 2 by Parseval.
double helicity_from_spectra(const VectorSpectrum& e, const VectorSpectrum& b) {
  double sum = 0.0;
  for (const Mode& m : mode_table(e.grid)) {
    const CVec ve = get(e, m.index);
    const CVec vb = get(b, m.index);
    const CVec re = cross_k(m.k, ve);
    const CVec rb = cross_k(m.k, vb);
    const double s = std::real(std::conj(ve.x) * re.x + std::conj(ve.y) * re.y +
                               std::conj(ve.z) * re.z + std::conj(vb.x) * rb.x +
                               std::conj(vb.y) * rb.y + std::conj(vb.z) * rb.z);
    sum += m.weight * s;
  }
  return 0.5 * sum * e.grid.cell_volume() / static_cast<double>(e.grid.points());
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Largest real-space amplitude carried by unresolved (mean or Nyquist) modes.
double unresolved_content(const VectorSpectrum& f) {
  const double n3 = static_cast<double>(f.grid.points());
  double worst = 0.0;
  for (const Mode& m : mode_table(f.grid)) {
    if (m.resolved) continue;
    for (int d = 0; d < 3; ++d) worst = std::max(worst, std::abs(f.c[d][m.index]) / n3);
  }
  return worst;
}

double checked_defect(const VectorSpectrum& f) {
  const double d = max_abs(inverse(f.grid, div_hat(f)));
  return std::max(d, unresolved_content(f));
}

void check_grids(const VectorField& a, const VectorField& b) {
  if (!(a.grid == b.grid)) throw ShapeError("fields live on different grids");
}

}  // namespace

FieldState::FieldState(VectorField e_field, VectorField b_field)
    : e(std::move(e_field)), b(std::move(b_field)) {
  check_grids(e, b);
}

void ChargeDensity::check(double tolerance) const {
  double mean = 0.0;
  for (double v : rho.data) mean += v;
  mean /= static_cast<double>(rho.data.size());
  if (std::abs(mean) > tolerance) {
    throw NotInRangeError("charge density must have zero mean on the torus", std::abs(mean));
  }
}

VectorField sample_field(const GridSpec& grid, const std::function<Vec3(const Vec3&)>& f) {
  grid.validate();
  VectorField out(grid);
  for (int ix = 0; ix < grid.n; ++ix) {
    for (int iy = 0; iy < grid.n; ++iy) {
      for (int iz = 0; iz < grid.n; ++iz) {
        const Vec3 v = f(Vec3(grid.coordinate(ix), grid.coordinate(iy), grid.coordinate(iz)));
        const std::size_t i = grid.index(ix, iy, iz);
        for (int d = 0; d < 3; ++d) out.c[d][i] = v[d];
      }
    }
  }
  return out;
}

ScalarField sample_scalar(const GridSpec& grid, const std::function<double(const Vec3&)>& f) {
  grid.validate();
  ScalarField out(grid);
  for (int ix = 0; ix < grid.n; ++ix) {
    for (int iy = 0; iy < grid.n; ++iy) {
      for (int iz = 0; iz < grid.n; ++iz) {
        out.data[grid.index(ix, iy, iz)] =
            f(Vec3(grid.coordinate(ix), grid.coordinate(iy), grid.coordinate(iz)));
      }
    }
  }
  return out;
}

VectorField curl(const VectorField& field) { return inverse(curl_hat(forward(field))); }

ScalarField div(const VectorField& field) {
  return inverse_scalar(field.grid, div_hat(forward(field)));
}

VectorField gradient(const ScalarField& field) {
  const Spectrum f = forward(field.grid, field.data);
  VectorSpectrum out = zeros_like(field.grid);
  for (const Mode& m : mode_table(field.grid)) {
    for (int d = 0; d < 3; ++d) out.c[d][m.index] = times_i(m.k[d] * f[m.index]);
  }
  return inverse(out);
}

ScalarField laplacian(const ScalarField& field) {
  Spectrum f = forward(field.grid, field.data);
  for (const Mode& m : mode_table(field.grid)) f[m.index] *= -k2(m.k);
  return inverse_scalar(field.grid, f);
}

VectorField inverse_curl(const VectorField& field, double tolerance) {
  const VectorSpectrum f = forward(field);
  const double defect = checked_defect(f);
  if (defect > tolerance * std::max(1.0, field.max_abs())) {
    std::ostringstream msg;
    msg << "field is not in the range of curl (divergence/mean/Nyquist defect " << defect << ")";
    throw NotInRangeError(msg.str(), defect);
  }
  return inverse(inverse_curl_hat(f));
}

ScalarField solve_poisson(const ScalarField& rho, double tolerance) {
  ChargeDensity charge(rho.grid);
  charge.rho = rho;
  charge.check(tolerance);
  Spectrum f = forward(rho.grid, rho.data);
  for (const Mode& m : mode_table(rho.grid)) {
    const double kk = k2(m.k);
    f[m.index] = kk > 0.0 ? -f[m.index] / kk : cd(0.0, 0.0);
  }
  return inverse_scalar(rho.grid, f);
}

double max_abs(const ScalarField& field) { return max_abs(field.data); }

double energy(const FieldState& state) {
  const VectorSpectrum e = forward(state.e);
  const VectorSpectrum b = forward(state.b);
  return 0.5 * (inner_product(b, b) + inner_product(e, e));
}

double helicity_hamiltonian(const FieldState& state) {
  return helicity_from_spectra(forward(state.e), forward(state.b));
}

double canonical_potential_hamiltonian(const PotentialState& potentials) {
  const VectorSpectrum a = forward(potentials.a);
  const VectorSpectrum y = forward(potentials.y);
  const VectorSpectrum w = inverse_curl_hat(y);
  const VectorSpectrum ra = curl_hat(a);
  return 0.5 * (inner_product(w, w) + inner_product(ra, ra));
}

double helicity_potential_hamiltonian(const PotentialState& potentials) {
  const VectorSpectrum a = forward(potentials.a);
  const VectorSpectrum y = forward(potentials.y);
  const VectorSpectrum r3a = curl_hat(curl_hat(curl_hat(a)));
  return 0.5 * (inner_product(r3a, a) + inner_product(inverse_curl_hat(y), y));
}

MomentumMaps momentum_maps(const FieldState& state, const ChargeDensity& charge) {
  if (!(charge.rho.grid == state.grid())) throw ShapeError("charge density lives on another grid");
  ScalarField de = div(state.e);
  ScalarField db = div(state.b);
  double res_e = 0.0;
  for (std::size_t i = 0; i < de.data.size(); ++i) {
    res_e = std::max(res_e, std::abs(de.data[i] - charge.rho.data[i]));
  }
  const double res_b = max_abs(db);
  for (double& v : db.data) v = -v;
  return {std::move(de), std::move(db), res_e, res_b};
}

PotentialMomentumMap momentum_map(const PotentialState& potentials) {
  ScalarField dy = div(potentials.y);
  const double res = max_abs(dy);
  for (double& v : dy.data) v = -v;
  return {std::move(dy), res};
}

PotentialState potential_representation(const FieldState& state, double tolerance) {
  PotentialState out(state.grid());
  out.a = inverse_curl(state.b, tolerance);
  out.y = -1.0 * curl(state.e);
  out.s = inverse_curl(-1.0 * state.e, tolerance);
  return out;
}

FieldState gauge_transform(const FieldState& state, const ScalarField& psi, const ScalarField& chi) {
  return FieldState(state.e + gradient(chi), state.b + gradient(psi));
}

std::string to_string(MaxwellStructure structure) {
  return structure == MaxwellStructure::canonical ? "canonical" : "helicity";
}

MaxwellStructure parse_structure(const std::string& name) {
  if (name == "canonical") return MaxwellStructure::canonical;
  if (name == "helicity") return MaxwellStructure::helicity;
  throw ConfigurationError("unknown Maxwell structure '" + name + "'");
}

namespace {

// Mode-local right-hand sides; k is the derivative wave vector of the mode.
void rhs_helicity(const std::array<double, 3>& k, const CVec& e, const CVec& b, CVec& de,
                  CVec& db) {
  // dHbar/dE = rot E, dHbar/dB = rot B
  const CVec dh_de = cross_k(k, e);
  const CVec dh_db = cross_k(k, b);
  db = -1.0 * dh_de;
  de = dh_db;
}

void rhs_canonical(const std::array<double, 3>& k, bool resolved, const CVec& e, const CVec& b,
                   CVec& de, CVec& db) {
  if (!resolved) {
    de = db = {};
    return;
  }
  const CVec a = (1.0 / k2(k)) * cross_k(k, b);
  const CVec y = (1.0 / kElectricFromY) * e;
  // H = ((rot^-1 Y, rot^-1 Y) + (rot A, rot A)) / 2 on the solenoidal part of
  // Y and the kinetic form (Y, Y) / 2 on its gradient part; either way dH/dY = Y.
  const CVec dh_dy = y;
  const CVec dh_da = cross_k(k, cross_k(k, a));
  const CVec a_dot = dh_dy;
  const CVec y_dot = -1.0 * dh_da;
  de = kElectricFromY * y_dot;
  db = cross_k(k, a_dot);
}

void mode_rhs(MaxwellStructure structure, const Mode& m, const CVec& e, const CVec& b, CVec& de,
              CVec& db) {
  if (structure == MaxwellStructure::helicity) {
    rhs_helicity(m.k, e, b, de, db);
  } else {
    rhs_canonical(m.k, m.resolved, e, b, de, db);
  }
}

}  // namespace

FieldState maxwell_rhs(const FieldState& state, MaxwellStructure structure) {
  const VectorSpectrum e = forward(state.e);
  const VectorSpectrum b = forward(state.b);
  VectorSpectrum de = zeros_like(state.grid());
  VectorSpectrum db = zeros_like(state.grid());
  for (const Mode& m : mode_table(state.grid())) {
    CVec ve, vb;
    mode_rhs(structure, m, get(e, m.index), get(b, m.index), ve, vb);
    put(de, m.index, ve);
    put(db, m.index, vb);
  }
  return FieldState(inverse(de), inverse(db));
}

EvolveResult evolve(const FieldState& initial, double duration, double step,
                    MaxwellStructure structure, const EvolveOptions& options) {
  if (!(step > 0.0)) throw ConfigurationError("time step must be positive");
  if (!(duration >= step)) throw ConfigurationError("duration must be at least one step");
  if (options.diagnostic_stride < 1) throw ConfigurationError("diagnostic stride must be >= 1");
  const GridSpec grid = initial.grid();
  grid.validate();

  const long steps = static_cast<long>(std::ceil(duration / step * (1.0 - 1e-12)));
  const double dt = duration / static_cast<double>(steps);

  VectorSpectrum e = forward(initial.e);
  VectorSpectrum b = forward(initial.b);
  const auto& modes = mode_table(grid);

  EvolveResult result{initial, dt, steps, {}, {}, {}, {}, {}, {}, {}, {}};
  double div_e0 = 0.0;
  double div_b0 = 0.0;
  bool warned_e = false;
  bool warned_b = false;

  auto diagnose = [&](long n) {
    const double t = static_cast<double>(n) * dt;
    const double de = max_abs(inverse(grid, div_hat(e)));
    const double db = max_abs(inverse(grid, div_hat(b)));
    if (n == 0) {
      div_e0 = de;
      div_b0 = db;
    }
    result.times.push_back(t);
    result.energy.push_back(0.5 * (inner_product(b, b) + inner_product(e, e)));
    result.helicity.push_back(helicity_from_spectra(e, b));
    result.div_e.push_back(de);
    result.div_b.push_back(db);
    std::ostringstream msg;
    if (!warned_e && std::abs(de - div_e0) > options.constraint_tolerance) {
      msg << "constraint violation: div E drifted by " << std::abs(de - div_e0) << " at t = " << t;
      result.warnings.push_back(msg.str());
      warned_e = true;
    }
    if (!warned_b && std::abs(db - div_b0) > options.constraint_tolerance) {
      msg.str("");
      msg << "constraint violation: div B drifted by " << std::abs(db - div_b0) << " at t = " << t;
      result.warnings.push_back(msg.str());
      warned_b = true;
    }
  };

  diagnose(0);
  if (options.snapshot_stride > 0) {
    result.snapshot_times.push_back(0.0);
    result.snapshots.push_back(initial);
  }

  for (long n = 1; n <= steps; ++n) {
    double norm = 0.0;
    for (const Mode& m : modes) {
      const std::size_t i = m.index;
      const CVec e0 = get(e, i);
      const CVec b0 = get(b, i);
      CVec k1e, k1b, k2e, k2b, k3e, k3b, k4e, k4b;
      mode_rhs(structure, m, e0, b0, k1e, k1b);
      mode_rhs(structure, m, e0 + (0.5 * dt) * k1e, b0 + (0.5 * dt) * k1b, k2e, k2b);
      mode_rhs(structure, m, e0 + (0.5 * dt) * k2e, b0 + (0.5 * dt) * k2b, k3e, k3b);
      mode_rhs(structure, m, e0 + dt * k3e, b0 + dt * k3b, k4e, k4b);
      const double w = dt / 6.0;
      const CVec e1 = e0 + w * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
      const CVec b1 = b0 + w * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
      put(e, i, e1);
      put(b, i, b1);
      norm += std::norm(e1.x) + std::norm(e1.y) + std::norm(e1.z) + std::norm(b1.x) +
              std::norm(b1.y) + std::norm(b1.z);
    }
    if (!std::isfinite(norm)) {
      throw DivergenceError("Maxwell state became non-finite at step " + std::to_string(n), n);
    }
    if (n % options.diagnostic_stride == 0 || n == steps) diagnose(n);
    if (options.snapshot_stride > 0 && (n % options.snapshot_stride == 0 || n == steps)) {
      result.snapshot_times.push_back(static_cast<double>(n) * dt);
      result.snapshots.emplace_back(inverse(e), inverse(b));
    }
  }
  result.final_state = FieldState(inverse(e), inverse(b));
  return result;
}

FieldState plane_wave_at(const GridSpec& grid, double t, double amplitude) {
  grid.validate();
  const double k = 2.0 * std::numbers::pi / grid.length;
  VectorField e = sample_field(grid, [&](const Vec3& x) {
    return Vec3(0.0, amplitude * std::cos(k * x[0] - k * t), 0.0);
  });
  VectorField b = sample_field(grid, [&](const Vec3& x) {
    return Vec3(0.0, 0.0, amplitude * std::cos(k * x[0] - k * t));
  });
  return FieldState(std::move(e), std::move(b));
}

FieldState plane_wave(const GridSpec& grid, double amplitude) {
  return plane_wave_at(grid, 0.0, amplitude);
}

FieldState beltrami_state(const GridSpec& grid) {
  grid.validate();
  const double k = 2.0 * std::numbers::pi / grid.length;
  VectorField b = sample_field(
      grid, [&](const Vec3& x) { return Vec3(std::sin(k * x[2]), std::cos(k * x[2]), 0.0); });
  return FieldState(VectorField(grid), std::move(b));
}

FieldState random_solenoidal_state(const GridSpec& grid, std::uint64_t seed, int modes,
                                   int max_wavenumber) {
  grid.validate();
  if (2 * max_wavenumber >= grid.n) {
    throw ConfigurationError("random field wave numbers must stay below the Nyquist frequency");
  }
  const double scale = 2.0 * std::numbers::pi / grid.length;
  const TermField p = random_trig_field(3, derive_seed(seed, 0), modes, max_wavenumber, scale);
  const TermField q = random_trig_field(3, derive_seed(seed, 1), modes, max_wavenumber, scale);
  const VectorField pf = sample_field(grid, [&](const Vec3& x) { return Vec3(p.value(x)); });
  const VectorField qf = sample_field(grid, [&](const Vec3& x) { return Vec3(q.value(x)); });
  return FieldState(curl(pf), curl(qf));
}

}  // namespace symred
