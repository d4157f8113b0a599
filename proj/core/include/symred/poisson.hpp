#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "symred/gauge_field.hpp"
#include "symred/lie_algebra.hpp"
#include "symred/types.hpp"

namespace symred {

// Particle state (q, p), optionally extended by internal variables (u, y) of
// the algebra dimension. Flat coordinate order is (q1..q3, p1..p3, u1..un, y1..yn).
class PhasePoint {
 public:
  PhasePoint() : q_(Vec3::Zero()), p_(Vec3::Zero()) {}
  PhasePoint(const Vec3& q, const Vec3& p) : q_(q), p_(p) {}
  // Throws ShapeError if u and y differ in length.
  PhasePoint(const Vec3& q, const Vec3& p, const VecX& u, const VecX& y);

  static PhasePoint from_coordinates(const VecX& coords);

  const Vec3& q() const { return q_; }
  const Vec3& p() const { return p_; }
  const VecX& u() const { return u_; }
  const VecX& y() const { return y_; }
  Vec3& q() { return q_; }
  Vec3& p() { return p_; }

  bool has_internal() const { return y_.size() > 0; }
  int internal_dim() const { return static_cast<int>(y_.size()); }

  VecX coordinates() const;
  // The first `active_dim` flat coordinates (6 for particle-only brackets).
  VecX coordinates(int active_dim) const;
  // Replaces the first coords.size() flat coordinates.
  PhasePoint with_coordinates(const VecX& coords) const;

 private:
  Vec3 q_;
  Vec3 p_;
  VecX u_;
  VecX y_;
};

enum class BracketKind { canonical, magnetic, reduced_ym, extended_ym, canonicalized_ym };

std::string to_string(BracketKind kind);

// One of the five bracket tables, realised as a point-dependent bivector.
//
// Conventions (fixed once, here):
//   {q^i, p_j} = delta^i_j
//   {p_i, p_j} = sum_s y_s F^(s)_{ij}(q)            (magnetic: F_ij, reduced: e_s)
//   {y_s, y_k} = sum_r c^r_{sk} y_r
//   {y_s, u^k} = L^k_s(u)   left-invariant frame in exponential coordinates,
//                            equal to delta at u = 0
// and for the extended table, which is the canonical table pulled back
// through p~ = p + sum_s y_s A^(s)(q):
//   {p_j, u^k} = -sum_r A^(r)_j L^k_r(u)
//   {y_s, p_j} = -sum_{r,m} c^m_{sr} A^(r)_j y_m
class BracketSpec {
 public:
  static BracketSpec canonical();
  // Requires a one-dimensional abelian curvature.
  static BracketSpec magnetic(std::shared_ptr<const CurvatureField> field);
  // Rejects dual elements that fail the coadjoint invariance gate.
  static BracketSpec reduced_ym(std::shared_ptr<const CurvatureField> field, DualElement xi,
                                double tolerance = kLieTolerance);
  static BracketSpec extended_ym(std::shared_ptr<const CurvatureField> field,
                                 std::shared_ptr<const GaugePotential> potential);
  static BracketSpec canonicalized_ym(StructureConstants algebra);

  BracketKind kind() const { return kind_; }
  const StructureConstants& algebra() const { return algebra_; }
  const std::shared_ptr<const CurvatureField>& field() const { return field_; }
  const std::shared_ptr<const GaugePotential>& potential() const { return potential_; }
  const DualElement& xi() const { return xi_; }

  bool uses_internal() const {
    return kind_ == BracketKind::extended_ym || kind_ == BracketKind::canonicalized_ym;
  }
  int internal_dim() const { return uses_internal() ? algebra_.dim() : 0; }
  int active_dim() const { return 6 + 2 * internal_dim(); }
  std::vector<std::string> coordinate_names() const;

 private:
  BracketSpec(BracketKind kind, StructureConstants algebra) : kind_(kind), algebra_(std::move(algebra)) {}

  BracketKind kind_;
  StructureConstants algebra_;
  std::shared_ptr<const CurvatureField> field_;
  std::shared_ptr<const GaugePotential> potential_;
  DualElement xi_;
};

// L(u) with L(k, s) = L^k_s: components of the left-invariant vector fields
// in exponential coordinates, the inverse of (1 - exp(-ad_u)) / ad_u.
MatX left_invariant_frame(const StructureConstants& algebra, const VecX& u);

// Pi_ab = {x_a, x_b} over the active coordinates. Exactly antisymmetric.
MatX bivector(const BracketSpec& spec, const PhasePoint& x);

// Closed-form description of the table entry {x_a, x_b} (for reports).
std::string bracket_entry_formula(const BracketSpec& spec, int a, int b);

// Smooth test function on phase space.
class Observable {
 public:
  using Evaluator = std::function<double(const PhasePoint&)>;
  using Gradient = std::function<VecX(const PhasePoint&, int active_dim)>;

  explicit Observable(Evaluator f, Gradient gradient = {}, double fd_step = kDefaultFdStep);

  static Observable coordinate(int index);
  static Observable constant(double value);

  double operator()(const PhasePoint& x) const { return f_(x); }
  // Analytic if supplied, otherwise fourth-order central differences over
  // the first active_dim flat coordinates. Throws NumericalError if the
  // result is not finite.
  VecX gradient(const PhasePoint& x, int active_dim) const;
  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }

  friend Observable operator*(const Observable& f, const Observable& g);
  friend Observable operator+(const Observable& f, const Observable& g);

 private:
  Evaluator f_;
  Gradient gradient_;
  double fd_step_;
};

// {f, g}(x) = grad f . Pi(x) . grad g
double bracket(const BracketSpec& spec, const Observable& f, const Observable& g,
               const PhasePoint& x);

// d Pi / d x_d for every active coordinate d, by central differences.
std::vector<MatX> bivector_derivative(const BracketSpec& spec, const PhasePoint& x,
                                      double fd_step = kDefaultFdStep);

// J_abc = sum_d (Pi_da d_d Pi_bc + Pi_db d_d Pi_ca + Pi_dc d_d Pi_ab).
// For the magnetic table J_{p1 p2 p3} = +R_123 (the Bianchi residual); the
// nested cyclic sum {x_a,{x_b,x_c}} + cyc equals -J_abc.
double jacobiator(const BracketSpec& spec, int a, int b, int c, const PhasePoint& x,
                  double fd_step = kDefaultFdStep);

struct JacobiatorMax {
  double value = 0.0;
  std::array<int, 3> triple{-1, -1, -1};
};

// Maximum |J_abc| over all coordinate triples a < b < c.
JacobiatorMax max_jacobiator(const BracketSpec& spec, const PhasePoint& x,
                             double fd_step = kDefaultFdStep);

// p~ = p + sum_s y_s A^(s)(q). Without internal variables the potential must be
// abelian and `charge` plays the role of y_1.
PhasePoint minimal_coupling(const PhasePoint& x, const GaugePotential& potential,
                            double charge = 1.0);
PhasePoint inverse_minimal_coupling(const PhasePoint& x, const GaugePotential& potential,
                                    double charge = 1.0);

// Pushes the extended bracket (field, potential) through the minimal-coupling
// map and returns max |transformed table - canonicalized table| over the sample.
double canonicalization_residual(const std::shared_ptr<const GaugePotential>& potential,
                                 const std::shared_ptr<const CurvatureField>& field,
                                 std::span<const PhasePoint> sample);

// Seeded phase points: q in the box, p (and u, y if internal_dim > 0) in [-1, 1].
std::vector<PhasePoint> sample_phase_points(std::uint64_t seed, int count, int internal_dim,
                                            const DomainBox& box = {});

}  // namespace symred
