#pragma once

#include <cstdint>

#include "symred/gauge_field.hpp"

namespace symred {

// Built-in potentials. All are coefficient tables (TermField) and therefore
// carry analytic Jacobians.

// Abelian A = (0, b q^1, 0): uniform field with F_12 = b.
GaugePotential uniform_b_potential(double b, const DomainBox& domain = {});

// Abelian A_j = sum_k m(j, k) q^k, so F_ij = m(j, i) - m(i, j).
GaugePotential linear_potential(const Mat3& m, const DomainBox& domain = {});

// so(3) potential A^(k)_i = a delta^k_i.
GaugePotential so3_constant_potential(double a);

// Abelian pure gauge A = grad psi for the given scalar table (one output).
GaugePotential gradient_potential(const TermField& psi);

// Seeded trigonometric polynomial in every component A^(s)_j.
GaugePotential random_trig_potential(const StructureConstants& algebra, std::uint64_t seed,
                                     int modes = 4, int max_wavenumber = 3);

GaugePotential zero_potential(const StructureConstants& algebra, const DomainBox& domain = {});

// Free-standing curvature with F^(component)_12 = scale * q^3 and every other
// entry zero. Not closed: its Bianchi residual R_123 equals `scale`.
CurvatureField f12_q3_curvature(const StructureConstants& algebra, double scale = 1.0,
                                int component = 0);

}  // namespace symred
