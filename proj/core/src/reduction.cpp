#include "symred/reduction.hpp"

#include <cmath>
#include <sstream>

#include "symred/error.hpp"
#include "symred/finite_difference.hpp"
#include "symred/poisson.hpp"

namespace symred {

ReducedForm::ReducedForm(DualElement xi, std::shared_ptr<const CurvatureField> field,
                         double tolerance)
    : xi_(std::move(xi)), field_(std::move(field)) {
  if (!field_) throw ConfigurationError("reduced form needs a curvature field");
  if (xi_.dim() != field_->dim()) throw ShapeError("dual element does not match the algebra");
  const GateResult gate = invariance_gate(field_->algebra(), xi_, tolerance);
  if (!gate.passed) {
    std::ostringstream msg;
    msg << "dual element is not coadjoint invariant: residual " << gate.max_residual
        << " at (s, k) = (" << gate.s + 1 << ", " << gate.k + 1 << ")";
    throw InvarianceError(msg.str(), gate.s, gate.k, gate.max_residual);
  }
}

Mat3 ReducedForm::magnetic_block(const Vec3& q) const {
  const Curvature f = field_->value(q);
  Mat3 g = Mat3::Zero();
  for (std::size_t s = 0; s < f.size(); ++s) g += xi_.e[static_cast<Eigen::Index>(s)] * f[s];
  return g;
}

MatX canonical_form() {
  MatX omega = MatX::Zero(6, 6);
  omega.block(0, 3, 3, 3) = -Mat3::Identity();
  omega.block(3, 0, 3, 3) = Mat3::Identity();
  return omega;
}

MatX ReducedForm::operator()(const Vec3& q) const {
  MatX omega = canonical_form();
  omega.block(0, 0, 3, 3) = magnetic_block(q);
  return omega;
}

MatX reduced_form(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                  const Vec3& q) {
  return ReducedForm(xi, field)(q);
}

FormDerivative exterior_derivative(const ReducedForm& form, const Vec3& q) {
  const double h = form.field()->fd_step();
  std::array<MatX, 3> d;
  for (int l = 0; l < 3; ++l) {
    d[l] = central_difference(
        [&](double t) {
          Vec3 x = q;
          x[l] += t;
          return MatX(form(x));
        },
        h);
  }
  FormDerivative out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) out[i][j][l] = d[l](i, j) + d[i](j, l) + d[j](l, i);
    }
  }
  return out;
}

double closedness_residual(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                           const GaugePotential*, std::span<const Vec3> sample) {
  const ReducedForm form(xi, field);
  double worst = 0.0;
  for (const Vec3& q : sample) {
    const FormDerivative d = exterior_derivative(form, q);
    for (const auto& a : d) {
      for (const auto& b : a) {
        for (double v : b) worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

double contracted_bianchi_residual(const DualElement& xi, const CurvatureField& field,
                                   const GaugePotential* potential, std::span<const Vec3> sample) {
  double worst = 0.0;
  for (const Vec3& q : sample) {
    worst = std::max(worst, bianchi_residual(field, potential, q).max_abs_contracted(xi.e));
  }
  return worst;
}

double bivector_consistency(const DualElement& xi, const std::shared_ptr<const CurvatureField>& field,
                            std::span<const Vec3> sample) {
  const ReducedForm form(xi, field);
  const BracketSpec spec = BracketSpec::reduced_ym(field, xi);
  double worst = 0.0;
  for (const Vec3& q : sample) {
    const MatX omega = form(q);
    const Eigen::FullPivLU<MatX> lu(omega);
    if (!lu.isInvertible()) {
      std::ostringstream msg;
      msg << "reduced form is singular at q = (" << q.transpose() << ")";
      throw NumericalError(msg.str());
    }
    const MatX inv = lu.solve(MatX::Identity(6, 6));
    const MatX pi = bivector(spec, PhasePoint(q, Vec3::Zero()));
    worst = std::max(worst, (inv - pi).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace symred
