#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "symred/gauge_field.hpp"
#include "symred/lie_algebra.hpp"
#include "symred/types.hpp"

namespace symred {

// Reduced two-form over (q, p) coordinates, as the antisymmetric 6x6 matrix
// Omega with omega = (1/2) Omega_ab dx^a ^ dx^b:
//
//   Omega = [[ G, -I ],
//            [ I,  0 ]],   G_ij = sum_s e_s F^(s)_ij(q)
//
// Its inverse is the reduced_ym bivector. Construction fails with
// InvarianceError when xi is not coadjoint invariant.
class ReducedForm {
 public:
  ReducedForm(DualElement xi, std::shared_ptr<const CurvatureField> field,
              double tolerance = kLieTolerance);

  const DualElement& xi() const { return xi_; }
  const std::shared_ptr<const CurvatureField>& field() const { return field_; }

  MatX operator()(const Vec3& q) const;
  Mat3 magnetic_block(const Vec3& q) const;

 private:
  DualElement xi_;
  std::shared_ptr<const CurvatureField> field_;
};

MatX reduced_form(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                  const Vec3& q);

// The canonical part [[0, -I], [I, 0]].
MatX canonical_form();

// (d omega)_ijl over the q coordinates, by fourth-order differences of the
// form's entries (same stencil and step as the curvature field).
using FormDerivative = std::array<std::array<std::array<double, 3>, 3>, 3>;
FormDerivative exterior_derivative(const ReducedForm& form, const Vec3& q);

// max over samples and (i, j, l) of |(d omega)_ijl|. The potential is accepted
// for symmetry with bianchi_residual; a passing gate makes it unnecessary.
double closedness_residual(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                           const GaugePotential* potential, std::span<const Vec3> sample);

// max over samples of |sum_s e_s R^(s)_ijl| from bianchi_residual.
double contracted_bianchi_residual(const DualElement& xi, const CurvatureField& field,
                                   const GaugePotential* potential, std::span<const Vec3> sample);

// max over samples of |inverse(Omega) - bivector(reduced_ym)|, the inverse by
// a generic LU solve. Throws NumericalError on a singular form.
double bivector_consistency(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                            std::span<const Vec3> sample);

}  // namespace symred
