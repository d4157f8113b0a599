#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symred/types.hpp"

namespace symred {

// A finite-dimensional real Lie algebra given by its structure constants
// c^r_{sk} in a basis {a_1..a_n}: [a_s, a_k] = sum_r c^r_{sk} a_r.
//
// Indices are 0-based in code. The constants are stored verbatim; nothing
// forces them to satisfy the Lie axioms, which is what validate() checks.
class StructureConstants {
 public:
  // A (value, r, s, k) entry as read from configuration. from_triples()
  // writes both c^r_{sk} = value and c^r_{ks} = -value.
  struct Entry {
    int r;
    int s;
    int k;
    double value;
  };

  // The abelian algebra of the given dimension.
  explicit StructureConstants(int dim);

  // Raw constants in r-major order (index (r*n + s)*n + k). Throws ShapeError
  // unless values.size() == dim^3.
  static StructureConstants from_values(int dim, std::vector<double> values);
  static StructureConstants from_triples(int dim, std::span<const Entry> entries);

  static StructureConstants abelian(int dim);
  // c^r_{sk} = epsilon_{skr}.
  static StructureConstants so3();
  // [a_1, a_2] = a_3, everything else zero.
  static StructureConstants heisenberg();
  // "abelian" (uses dim), "so3", "heisenberg". Throws ConfigurationError.
  static StructureConstants preset(std::string_view name, int dim = 1);

  int dim() const { return dim_; }
  double operator()(int r, int s, int k) const { return c_[index(r, s, k)]; }
  void set(int r, int s, int k, double value) { c_[index(r, s, k)] = value; }

  bool is_abelian() const;
  bool operator==(const StructureConstants& other) const = default;

  // Matrix of ad_a in the basis: (ad_a)^r_k = sum_s a^s c^r_{sk}.
  MatX ad(const VecX& a) const;

 private:
  StructureConstants(int dim, std::vector<double> values);
  std::size_t index(int r, int s, int k) const {
    return (static_cast<std::size_t>(r) * dim_ + s) * dim_ + k;
  }

  int dim_;
  std::vector<double> c_;
};

// Components e_s of xi = sum_s e_s a^s in the dual basis <a^i, a_j> = delta.
struct DualElement {
  VecX e;

  int dim() const { return static_cast<int>(e.size()); }
};

struct AxiomViolation {
  enum class Kind { antisymmetry, jacobi };

  Kind kind;
  // (r, s, k) for antisymmetry; (r, s, k, l) for Jacobi. Unused slots are -1.
  std::array<int, 4> indices;
  double residual;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  double max_antisymmetry_residual = 0.0;
  double max_jacobi_residual = 0.0;
  double tolerance = kLieTolerance;

  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const StructureConstants& sc, double tolerance = kLieTolerance);

// [a, b]^r = sum_{s,k} c^r_{sk} a^s b^k.
VecX bracket(const StructureConstants& sc, const VecX& a, const VecX& b);

// r_{sk} = sum_r c^r_{sk} e_r. The dual element is Ad*-invariant iff r == 0.
MatX invariance_residual(const StructureConstants& sc, const DualElement& xi);

struct GateResult {
  bool passed;
  int s = -1;  // offending pair, -1 when passed
  int k = -1;
  double max_residual = 0.0;
};

GateResult invariance_gate(const StructureConstants& sc, const DualElement& xi,
                           double tolerance = kLieTolerance);

std::string to_string(AxiomViolation::Kind kind);

}  // namespace symred
