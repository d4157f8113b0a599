#include "symred/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symred/error.hpp"

namespace symred {

StructureConstants::StructureConstants(int dim) : StructureConstants(dim, {}) {}

StructureConstants::StructureConstants(int dim, std::vector<double> values)
    : dim_(dim), c_(std::move(values)) {
  if (dim <= 0) {
    throw ShapeError("algebra dimension must be positive, got " + std::to_string(dim));
  }
  const auto expected = static_cast<std::size_t>(dim) * dim * dim;
  if (c_.empty()) {
    c_.assign(expected, 0.0);
  } else if (c_.size() != expected) {
    std::ostringstream msg;
    msg << "structure constants for dim " << dim << " need " << expected
        << " entries, got " << c_.size();
    throw ShapeError(msg.str());
  }
}

StructureConstants StructureConstants::from_values(int dim, std::vector<double> values) {
  if (values.empty()) {
    throw ShapeError("structure constant array is empty");
  }
  return StructureConstants(dim, std::move(values));
}

StructureConstants StructureConstants::from_triples(int dim, std::span<const Entry> entries) {
  StructureConstants sc(dim);
  for (const auto& e : entries) {
    for (int idx : {e.r, e.s, e.k}) {
      if (idx < 0 || idx >= dim) {
        throw ShapeError("structure constant index " + std::to_string(idx) +
                         " out of range for dim " + std::to_string(dim));
      }
    }
    if (e.s == e.k) {
      if (e.value != 0.0) {
        throw ShapeError("diagonal structure constant c^r_{ss} must vanish");
      }
      continue;
    }
    sc.set(e.r, e.s, e.k, e.value);
    sc.set(e.r, e.k, e.s, -e.value);
  }
  return sc;
}

StructureConstants StructureConstants::abelian(int dim) { return StructureConstants(dim); }

StructureConstants StructureConstants::so3() {
  StructureConstants sc(3);
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) {
      for (int k = 0; k < 3; ++k) {
        // epsilon_{skr}: even permutations of (0,1,2) give +1.
        const int sign = (s - k) * (k - r) * (r - s) / 2;
        sc.set(r, s, k, static_cast<double>(sign));
      }
    }
  }
  return sc;
}

StructureConstants StructureConstants::heisenberg() {
  StructureConstants sc(3);
  sc.set(2, 0, 1, 1.0);
  sc.set(2, 1, 0, -1.0);
  return sc;
}

StructureConstants StructureConstants::preset(std::string_view name, int dim) {
  if (name == "abelian") return abelian(dim);
  if (name == "so3") return so3();
  if (name == "heisenberg") return heisenberg();
  throw ConfigurationError("unknown algebra preset '" + std::string(name) + "'");
}

bool StructureConstants::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

MatX StructureConstants::ad(const VecX& a) const {
  if (a.size() != dim_) throw ShapeError("ad: vector length does not match algebra dimension");
  MatX m = MatX::Zero(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int k = 0; k < dim_; ++k) {
      double sum = 0.0;
      for (int s = 0; s < dim_; ++s) sum += a[s] * (*this)(r, s, k);
      m(r, k) = sum;
    }
  }
  return m;
}

ValidationReport validate(const StructureConstants& sc, double tolerance) {
  ValidationReport report;
  report.tolerance = tolerance;
  const int n = sc.dim();

  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int k = s; k < n; ++k) {
        const double res = std::abs(sc(r, s, k) + sc(r, k, s));
        report.max_antisymmetry_residual = std::max(report.max_antisymmetry_residual, res);
        if (res > tolerance) {
          report.violations.push_back(
              {AxiomViolation::Kind::antisymmetry, {r, s, k, -1}, res});
        }
      }
    }
  }

  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += sc(m, s, k) * sc(r, m, l) + sc(m, k, l) * sc(r, m, s) +
                   sc(m, l, s) * sc(r, m, k);
          }
          const double res = std::abs(sum);
          report.max_jacobi_residual = std::max(report.max_jacobi_residual, res);
          if (res > tolerance) {
            report.violations.push_back({AxiomViolation::Kind::jacobi, {r, s, k, l}, res});
          }
        }
      }
    }
  }
  return report;
}

VecX bracket(const StructureConstants& sc, const VecX& a, const VecX& b) {
  const int n = sc.dim();
  if (a.size() != n || b.size() != n) {
    throw ShapeError("bracket: vector length does not match algebra dimension");
  }
  VecX out = VecX::Zero(n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int k = 0; k < n; ++k) out[r] += sc(r, s, k) * a[s] * b[k];
    }
  }
  return out;
}

MatX invariance_residual(const StructureConstants& sc, const DualElement& xi) {
  const int n = sc.dim();
  if (xi.dim() != n) {
    throw ShapeError("invariance_residual: dual element length does not match algebra dimension");
  }
  MatX res = MatX::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      for (int r = 0; r < n; ++r) sum += sc(r, s, k) * xi.e[r];
      res(s, k) = sum;
    }
  }
  return res;
}

GateResult invariance_gate(const StructureConstants& sc, const DualElement& xi,
                           double tolerance) {
  const MatX res = invariance_residual(sc, xi);
  GateResult gate{true};
  for (int s = 0; s < res.rows(); ++s) {
    for (int k = 0; k < res.cols(); ++k) {
      const double v = std::abs(res(s, k));
      if (v > gate.max_residual) {
        gate.max_residual = v;
        if (v > tolerance) {
          gate.passed = false;
          gate.s = s;
          gate.k = k;
        }
      }
    }
  }
  return gate;
}

std::string to_string(AxiomViolation::Kind kind) {
  return kind == AxiomViolation::Kind::antisymmetry ? "antisymmetry" : "jacobi";
}

}  // namespace symred
