#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symred/spectral.hpp"
#include "symred/types.hpp"

namespace symred {

struct FieldState {
  VectorField e;
  VectorField b;

  explicit FieldState(const GridSpec& grid) : e(grid), b(grid) {}
  FieldState(VectorField e_field, VectorField b_field);
  const GridSpec& grid() const { return e.grid; }
};

// Potentials (A, Y) of the first formulation plus S with rot S = -E.
struct PotentialState {
  VectorField a;
  VectorField y;
  VectorField s;

  explicit PotentialState(const GridSpec& grid) : a(grid), y(grid), s(grid) {}
};

struct ChargeDensity {
  ScalarField rho;

  explicit ChargeDensity(const GridSpec& grid) : rho(grid) {}
  // Throws NotInRangeError if the mean is not zero (to `tolerance`).
  void check(double tolerance = 1e-10) const;
};

// E = -Y in the (A, Y) formulation, so that its Hamilton equations give
// E' = rot B, B' = -rot E.
inline constexpr double kElectricFromY = -1.0;

VectorField sample_field(const GridSpec& grid, const std::function<Vec3(const Vec3&)>& f);
ScalarField sample_scalar(const GridSpec& grid, const std::function<double(const Vec3&)>& f);

// Spectral derivatives.
VectorField curl(const VectorField& field);
ScalarField div(const VectorField& field);
VectorField gradient(const ScalarField& field);
ScalarField laplacian(const ScalarField& field);

// Unique mean-free, divergence-free A with curl A = field. The input must be
// mean free, divergence free and free of Nyquist content; the largest of these
// defects is compared against `tolerance * max(1, |field|_inf)` and reported
// through NotInRangeError.
VectorField inverse_curl(const VectorField& field, double tolerance = 1e-9);

// Mean-free phi with laplacian(phi) = rho; rho must be mean free.
ScalarField solve_poisson(const ScalarField& rho, double tolerance = 1e-10);

double max_abs(const ScalarField& field);

// H = ((B, B) + (E, E)) / 2
double energy(const FieldState& state);
// Hbar = ((rot E, E) + (rot B, B)) / 2
double helicity_hamiltonian(const FieldState& state);

// Hamiltonians of the potential representation:
//   canonical: ((rot^-1 Y, rot^-1 Y) + (rot A, rot A)) / 2
//   helicity:  ((rot^3 A, A) + (rot^-1 Y, Y)) / 2
double canonical_potential_hamiltonian(const PotentialState& potentials);
double helicity_potential_hamiltonian(const PotentialState& potentials);

struct MomentumMaps {
  ScalarField div_e;        // first component of l(B, E)
  ScalarField minus_div_b;  // second component of l(B, E)
  double div_e_residual;    // |div E - rho|_inf
  double div_b_residual;    // |div B|_inf
};

MomentumMaps momentum_maps(const FieldState& state, const ChargeDensity& charge);

struct PotentialMomentumMap {
  ScalarField minus_div_y;  // l(A, Y)
  double div_y_residual;
};

PotentialMomentumMap momentum_map(const PotentialState& potentials);

// A = rot^-1 B, Y = -rot E, S = rot^-1(-E). Throws NotInRangeError if B (or,
// for S, E) is not solenoidal and mean free.
PotentialState potential_representation(const FieldState& state, double tolerance = 1e-9);

// (B + grad psi, E + grad chi)
FieldState gauge_transform(const FieldState& state, const ScalarField& psi, const ScalarField& chi);

enum class MaxwellStructure { canonical, helicity };

std::string to_string(MaxwellStructure structure);
MaxwellStructure parse_structure(const std::string& name);

// (E', B') assembled from the functional derivatives of the chosen structure:
//   canonical: A = rot^-1 B, Y = E / kElectricFromY,
//              A' = dH/dY, Y' = -dH/dA, then E' = kElectricFromY Y', B' = rot A'
//   helicity:  B' = -dHbar/dE, E' = dHbar/dB
FieldState maxwell_rhs(const FieldState& state, MaxwellStructure structure);

struct EvolveOptions {
  int diagnostic_stride = 1;
  // 0 records no snapshots; final_state is always returned.
  int snapshot_stride = 0;
  double constraint_tolerance = 1e-8;
};

struct EvolveResult {
  FieldState final_state;
  double step = 0.0;
  long steps = 0;
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> helicity;
  std::vector<double> div_e;
  std::vector<double> div_b;
  std::vector<double> snapshot_times;
  std::vector<FieldState> snapshots;
  std::vector<std::string> warnings;
};

// Vacuum Maxwell evolution, classical rk4 applied mode by mode in Fourier
// space with step T / ceil(T / h). Diagnostics are recorded at t = 0 and every
// diagnostic_stride steps (always including the last). Constraint drift
// beyond options.constraint_tolerance is reported in `warnings`.
EvolveResult evolve(const FieldState& initial, double duration, double step,
                    MaxwellStructure structure, const EvolveOptions& options = {});

// E = a (0, cos kx, 0), B = a (0, 0, cos kx) with k = 2 pi / L.
FieldState plane_wave(const GridSpec& grid, double amplitude = 1.0);
// Exact plane wave at time t.
FieldState plane_wave_at(const GridSpec& grid, double t, double amplitude = 1.0);
// B = (sin kz, cos kz, 0) with rot B = k B, E = 0.
FieldState beltrami_state(const GridSpec& grid);
// E = rot P, B = rot Q for seeded trigonometric vector fields P, Q with
// integer wave vectors in [-max_wavenumber, max_wavenumber]^3.
FieldState random_solenoidal_state(const GridSpec& grid, std::uint64_t seed, int modes = 4,
                                   int max_wavenumber = 3);

}  // namespace symred
