#include "symred/potentials.hpp"

#include "symred/error.hpp"

namespace symred {

namespace {

FieldTerm poly(int output, double coefficient, int a, int b, int c) {
  return {output, FieldTerm::Kind::polynomial, coefficient, {a, b, c}};
}

}  // namespace

GaugePotential uniform_b_potential(double b, const DomainBox& domain) {
  return GaugePotential::from_terms(StructureConstants::abelian(1),
                                    TermField(3, {poly(1, b, 1, 0, 0)}), domain);
}

GaugePotential linear_potential(const Mat3& m, const DomainBox& domain) {
  std::vector<FieldTerm> terms;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (m(j, k) == 0.0) continue;
      std::array<int, 3> e{0, 0, 0};
      e[k] = 1;
      terms.push_back(poly(j, m(j, k), e[0], e[1], e[2]));
    }
  }
  return GaugePotential::from_terms(StructureConstants::abelian(1), TermField(3, std::move(terms)),
                                    domain);
}

GaugePotential so3_constant_potential(double a) {
  std::vector<FieldTerm> terms;
  for (int k = 0; k < 3; ++k) terms.push_back(poly(k * 3 + k, a, 0, 0, 0));
  return GaugePotential::from_terms(StructureConstants::so3(), TermField(9, std::move(terms)));
}

GaugePotential gradient_potential(const TermField& psi) {
  if (psi.outputs() != 1) throw ShapeError("gradient potential needs a scalar table");
  std::vector<FieldTerm> terms;
  const double ks = psi.wave_scale();
  for (const auto& t : psi.terms()) {
    const auto& e = t.exponents;
    for (int j = 0; j < 3; ++j) {
      switch (t.kind) {
        case FieldTerm::Kind::polynomial: {
          if (e[j] == 0) break;
          auto d = e;
          d[j] -= 1;
          terms.push_back(poly(j, t.coefficient * e[j], d[0], d[1], d[2]));
          break;
        }
        case FieldTerm::Kind::cosine:
          if (e[j] == 0) break;
          terms.push_back({j, FieldTerm::Kind::sine, -t.coefficient * ks * e[j], e});
          break;
        case FieldTerm::Kind::sine:
          if (e[j] == 0) break;
          terms.push_back({j, FieldTerm::Kind::cosine, t.coefficient * ks * e[j], e});
          break;
      }
    }
  }
  return GaugePotential::from_terms(StructureConstants::abelian(1),
                                    TermField(3, std::move(terms), ks));
}

GaugePotential random_trig_potential(const StructureConstants& algebra, std::uint64_t seed,
                                     int modes, int max_wavenumber) {
  return GaugePotential::from_terms(
      algebra, random_trig_field(3 * algebra.dim(), seed, modes, max_wavenumber));
}

GaugePotential zero_potential(const StructureConstants& algebra, const DomainBox& domain) {
  return GaugePotential::from_terms(algebra, TermField(3 * algebra.dim(), {}), domain);
}

CurvatureField f12_q3_curvature(const StructureConstants& algebra, double scale, int component) {
  if (component < 0 || component >= algebra.dim()) {
    throw ShapeError("perturbed curvature component out of range");
  }
  // Dual component b_3 carries F_12.
  return CurvatureField::from_terms(
      algebra, TermField(3 * algebra.dim(), {poly(component * 3 + 2, scale, 0, 0, 1)}));
}

}  // namespace symred
