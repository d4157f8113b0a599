#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "symred/lie_algebra.hpp"
#include "symred/term_field.hpp"
#include "symred/types.hpp"

namespace symred {

// Axis-aligned evaluation box. Points up to `slack` outside the box are still
// accepted so that derivative stencils centred on the boundary stay legal.
struct DomainBox {
  Vec3 lower = Vec3::Constant(-1.0);
  Vec3 upper = Vec3::Constant(1.0);
  double slack = 1e-3;

  bool contains(const Vec3& q) const;
};

enum class DerivativeMode { analytic, finite_difference };

// Algebra-valued one-form A = sum_s a_s A^(s)_j(q) dq^j on a box in R^3.
//
// value(q) is an n x 3 matrix with A^(s)_j in row s, column j.
// jacobian(q)[s](i, j) = dA^(s)_j / dq^i.
class GaugePotential {
 public:
  using Evaluator = std::function<MatX(const Vec3&)>;
  using JacobianEvaluator = std::function<std::vector<Mat3>(const Vec3&)>;

  // Without an analytic Jacobian the potential differentiates by finite
  // differences; with one it defaults to the analytic route.
  GaugePotential(StructureConstants algebra, Evaluator values, JacobianEvaluator jacobian = {},
                 DomainBox domain = {}, double fd_step = kDefaultFdStep);

  // Output index s*3 + j of the table carries A^(s)_j.
  static GaugePotential from_terms(StructureConstants algebra, TermField terms,
                                   DomainBox domain = {}, double fd_step = kDefaultFdStep);

  const StructureConstants& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim(); }
  const DomainBox& domain() const { return domain_; }
  double fd_step() const { return fd_step_; }
  DerivativeMode derivative_mode() const { return mode_; }
  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }
  const std::optional<TermField>& terms() const { return terms_; }

  GaugePotential with_derivative_mode(DerivativeMode mode) const;

  MatX value(const Vec3& q) const;
  std::vector<Mat3> jacobian(const Vec3& q) const;
  std::vector<Mat3> finite_difference_jacobian(const Vec3& q) const;
  // max |analytic - finite difference| over all Jacobian entries.
  double jacobian_consistency(const Vec3& q) const;

 private:
  void check(const Vec3& q) const;

  StructureConstants algebra_;
  Evaluator values_;
  JacobianEvaluator jacobian_;
  DomainBox domain_;
  double fd_step_;
  DerivativeMode mode_;
  std::optional<TermField> terms_;
};

// Curvature components at a point: one antisymmetric 3x3 matrix F^(s)_{ij}
// per algebra basis element.
using Curvature = std::vector<Mat3>;

enum class CurvatureProvenance { derived_from_potential, free_standing };

// Algebra-valued two-form. Free-standing fields are specified through their
// dual components b^(s)_k, with F^(s)_{ij} = eps_{ijk} b^(s)_k, so that
// antisymmetry holds by construction.
class CurvatureField {
 public:
  using DualEvaluator = std::function<MatX(const Vec3&)>;

  static CurvatureField from_potential(std::shared_ptr<const GaugePotential> potential);
  static CurvatureField free_standing(StructureConstants algebra, DualEvaluator dual,
                                      DomainBox domain = {}, double fd_step = kDefaultFdStep);
  // Output index s*3 + k carries b^(s)_k, i.e. F^(s)_{23}, F^(s)_{31}, F^(s)_{12}.
  static CurvatureField from_terms(StructureConstants algebra, TermField terms,
                                   DomainBox domain = {}, double fd_step = kDefaultFdStep);
  static CurvatureField zero(StructureConstants algebra);

  // Pointwise sum; the result is free-standing.
  CurvatureField plus(const CurvatureField& other) const;

  const StructureConstants& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim(); }
  CurvatureProvenance provenance() const { return provenance_; }
  const DomainBox& domain() const { return domain_; }
  double fd_step() const { return fd_step_; }
  const std::shared_ptr<const GaugePotential>& source() const { return source_; }

  Curvature value(const Vec3& q) const;
  // derivative(q)[l][s] = dF^(s) / dq^l by fourth-order central differences.
  std::array<Curvature, 3> derivative(const Vec3& q) const;

 private:
  using Evaluator = std::function<Curvature(const Vec3&)>;
  CurvatureField(StructureConstants algebra, Evaluator eval, CurvatureProvenance provenance,
                 DomainBox domain, double fd_step,
                 std::shared_ptr<const GaugePotential> source);

  StructureConstants algebra_;
  Evaluator eval_;
  CurvatureProvenance provenance_;
  DomainBox domain_;
  double fd_step_;
  std::shared_ptr<const GaugePotential> source_;
};

// F^(s)_{ij} = d_i A^(s)_j - d_j A^(s)_i + sum_{k,r} c^s_{kr} A^(k)_i A^(r)_j.
Curvature curvature(const GaugePotential& potential, const Vec3& q);

// Bianchi residual at a point, indexed (s, i, j, l):
//
//   R^(s)_{ijl} = d_l F_ij + d_i F_jl + d_j F_li
//               + sum_{k,r} c^s_{kr} (A^(k)_l F^(r)_ij + A^(k)_i F^(r)_jl + A^(k)_j F^(r)_li)
//
// The quadratic term is the covariant completion that makes R vanish
// identically for curvature(A) as defined above.
class BianchiResidual {
 public:
  explicit BianchiResidual(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * 27, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int s, int i, int j, int l) { return data_[index(s, i, j, l)]; }
  double operator()(int s, int i, int j, int l) const { return data_[index(s, i, j, l)]; }
  double max_abs() const;
  // sum_s e_s R^(s)_{ijl}, max over (i, j, l).
  double max_abs_contracted(const VecX& e) const;

 private:
  std::size_t index(int s, int i, int j, int l) const {
    return static_cast<std::size_t>(((s * 3 + i) * 3 + j) * 3 + l);
  }
  int dim_;
  std::vector<double> data_;
};

// Non-abelian fields need the potential for the quadratic term; abelian
// fields ignore it. Throws MissingPotentialError / ShapeError.
BianchiResidual bianchi_residual(const CurvatureField& field, const GaugePotential* potential,
                                 const Vec3& q);

}  // namespace symred
