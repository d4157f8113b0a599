#include "symred/gauge_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symred/error.hpp"
#include "symred/finite_difference.hpp"

namespace symred {

namespace {

std::string describe(const Vec3& q) {
  std::ostringstream s;
  s << "(" << q[0] << ", " << q[1] << ", " << q[2] << ")";
  return s.str();
}

Curvature dual_to_curvature(const MatX& dual) {
  Curvature f(static_cast<std::size_t>(dual.rows()), Mat3::Zero());
  for (Eigen::Index s = 0; s < dual.rows(); ++s) {
    auto& m = f[static_cast<std::size_t>(s)];
    m(1, 2) = dual(s, 0);
    m(2, 1) = -dual(s, 0);
    m(2, 0) = dual(s, 1);
    m(0, 2) = -dual(s, 1);
    m(0, 1) = dual(s, 2);
    m(1, 0) = -dual(s, 2);
  }
  return f;
}

Curvature curvature_from(const StructureConstants& sc, const MatX& a,
                         const std::vector<Mat3>& jac) {
  const int n = sc.dim();
  Curvature f(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const Mat3& d = jac[static_cast<std::size_t>(s)];
    Mat3 m = d - d.transpose();
    for (int k = 0; k < n; ++k) {
      for (int r = 0; r < n; ++r) {
        const double c = sc(s, k, r);
        if (c == 0.0) continue;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) m(i, j) += c * a(k, i) * a(r, j);
        }
      }
    }
    f[static_cast<std::size_t>(s)] = 0.5 * (m - m.transpose());
  }
  return f;
}

}  // namespace

bool DomainBox::contains(const Vec3& q) const {
  for (int i = 0; i < 3; ++i) {
    if (!(q[i] >= lower[i] - slack && q[i] <= upper[i] + slack)) return false;
  }
  return true;
}

GaugePotential::GaugePotential(StructureConstants algebra, Evaluator values,
                               JacobianEvaluator jacobian, DomainBox domain, double fd_step)
    : algebra_(std::move(algebra)),
      values_(std::move(values)),
      jacobian_(std::move(jacobian)),
      domain_(domain),
      fd_step_(fd_step),
      mode_(jacobian_ ? DerivativeMode::analytic : DerivativeMode::finite_difference) {
  if (!values_) throw ConfigurationError("gauge potential needs an evaluator");
  if (!(fd_step_ > 0.0)) throw ConfigurationError("finite-difference step must be positive");
}

GaugePotential GaugePotential::from_terms(StructureConstants algebra, TermField terms,
                                          DomainBox domain, double fd_step) {
  const int n = algebra.dim();
  if (terms.outputs() != 3 * n) {
    throw ShapeError("potential table needs 3*n outputs (n = " + std::to_string(n) + ")");
  }
  auto shared = std::make_shared<const TermField>(terms);
  auto values = [shared, n](const Vec3& q) {
    const VecX v = shared->value(q);
    MatX a(n, 3);
    for (int s = 0; s < n; ++s) {
      for (int j = 0; j < 3; ++j) a(s, j) = v[s * 3 + j];
    }
    return a;
  };
  auto jac = [shared, n](const Vec3& q) {
    const MatX g = shared->gradient(q);
    std::vector<Mat3> out(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(s)](i, j) = g(s * 3 + j, i);
      }
    }
    return out;
  };
  GaugePotential pot(std::move(algebra), values, jac, domain, fd_step);
  pot.terms_ = std::move(terms);
  return pot;
}

GaugePotential GaugePotential::with_derivative_mode(DerivativeMode mode) const {
  if (mode == DerivativeMode::analytic && !jacobian_) {
    throw ConfigurationError("analytic derivatives requested but no Jacobian was supplied");
  }
  GaugePotential copy = *this;
  copy.mode_ = mode;
  return copy;
}

void GaugePotential::check(const Vec3& q) const {
  if (!domain_.contains(q)) throw DomainError("potential evaluated outside domain at " + describe(q));
}

MatX GaugePotential::value(const Vec3& q) const {
  check(q);
  MatX a = values_(q);
  if (a.rows() != dim() || a.cols() != 3) {
    throw ShapeError("potential evaluator returned the wrong shape");
  }
  return a;
}

std::vector<Mat3> GaugePotential::finite_difference_jacobian(const Vec3& q) const {
  check(q);
  std::vector<Mat3> out(static_cast<std::size_t>(dim()), Mat3::Zero());
  for (int i = 0; i < 3; ++i) {
    const MatX d = central_difference(
        [&](double t) {
          Vec3 x = q;
          x[i] += t;
          return MatX(values_(x));
        },
        fd_step_);
    for (int s = 0; s < dim(); ++s) {
      for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(s)](i, j) = d(s, j);
    }
  }
  return out;
}

std::vector<Mat3> GaugePotential::jacobian(const Vec3& q) const {
  if (mode_ == DerivativeMode::analytic) {
    check(q);
    auto j = jacobian_(q);
    if (static_cast<int>(j.size()) != dim()) throw ShapeError("Jacobian evaluator returned the wrong shape");
    return j;
  }
  return finite_difference_jacobian(q);
}

double GaugePotential::jacobian_consistency(const Vec3& q) const {
  if (!jacobian_) throw ConfigurationError("no analytic Jacobian to compare against");
  check(q);
  const auto exact = jacobian_(q);
  const auto fd = finite_difference_jacobian(q);
  double worst = 0.0;
  for (std::size_t s = 0; s < exact.size(); ++s) {
    worst = std::max(worst, (exact[s] - fd[s]).cwiseAbs().maxCoeff());
  }
  return worst;
}

CurvatureField::CurvatureField(StructureConstants algebra, Evaluator eval,
                               CurvatureProvenance provenance, DomainBox domain, double fd_step,
                               std::shared_ptr<const GaugePotential> source)
    : algebra_(std::move(algebra)),
      eval_(std::move(eval)),
      provenance_(provenance),
      domain_(domain),
      fd_step_(fd_step),
      source_(std::move(source)) {}

CurvatureField CurvatureField::from_potential(std::shared_ptr<const GaugePotential> potential) {
  if (!potential) throw MissingPotentialError("curvature requested from a null potential");
  auto eval = [potential](const Vec3& q) { return curvature(*potential, q); };
  return CurvatureField(potential->algebra(), eval, CurvatureProvenance::derived_from_potential,
                        potential->domain(), potential->fd_step(), potential);
}

CurvatureField CurvatureField::free_standing(StructureConstants algebra, DualEvaluator dual,
                                             DomainBox domain, double fd_step) {
  const int n = algebra.dim();
  auto eval = [dual = std::move(dual), n](const Vec3& q) {
    const MatX b = dual(q);
    if (b.rows() != n || b.cols() != 3) throw ShapeError("curvature evaluator returned the wrong shape");
    return dual_to_curvature(b);
  };
  return CurvatureField(std::move(algebra), eval, CurvatureProvenance::free_standing, domain,
                        fd_step, nullptr);
}

CurvatureField CurvatureField::from_terms(StructureConstants algebra, TermField terms,
                                          DomainBox domain, double fd_step) {
  const int n = algebra.dim();
  if (terms.outputs() != 3 * n) {
    throw ShapeError("curvature table needs 3*n outputs (n = " + std::to_string(n) + ")");
  }
  auto dual = [terms = std::move(terms), n](const Vec3& q) {
    const VecX v = terms.value(q);
    MatX b(n, 3);
    for (int s = 0; s < n; ++s) {
      for (int k = 0; k < 3; ++k) b(s, k) = v[s * 3 + k];
    }
    return b;
  };
  return free_standing(std::move(algebra), dual, domain, fd_step);
}

CurvatureField CurvatureField::zero(StructureConstants algebra) {
  const int n = algebra.dim();
  return free_standing(std::move(algebra), [n](const Vec3&) { return MatX(MatX::Zero(n, 3)); });
}

CurvatureField CurvatureField::plus(const CurvatureField& other) const {
  if (!(other.algebra_ == algebra_)) throw ShapeError("cannot add curvatures over different algebras");
  auto eval = [a = eval_, b = other.eval_](const Vec3& q) {
    Curvature fa = a(q);
    const Curvature fb = b(q);
    for (std::size_t s = 0; s < fa.size(); ++s) fa[s] += fb[s];
    return fa;
  };
  return CurvatureField(algebra_, eval, CurvatureProvenance::free_standing, domain_, fd_step_,
                        nullptr);
}

Curvature CurvatureField::value(const Vec3& q) const {
  if (!domain_.contains(q)) throw DomainError("curvature evaluated outside domain at " + describe(q));
  return eval_(q);
}

std::array<Curvature, 3> CurvatureField::derivative(const Vec3& q) const {
  if (!domain_.contains(q)) throw DomainError("curvature evaluated outside domain at " + describe(q));
  const int n = dim();
  std::array<Curvature, 3> out;
  for (int l = 0; l < 3; ++l) {
    // Differentiate the stacked (3n x 3) block so one stencil serves all s.
    const MatX d = central_difference(
        [&](double t) {
          Vec3 x = q;
          x[l] += t;
          const Curvature f = eval_(x);
          MatX stacked(3 * n, 3);
          for (int s = 0; s < n; ++s) stacked.block(3 * s, 0, 3, 3) = f[static_cast<std::size_t>(s)];
          return stacked;
        },
        fd_step_);
    out[l].resize(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) out[l][static_cast<std::size_t>(s)] = d.block(3 * s, 0, 3, 3);
  }
  return out;
}

Curvature curvature(const GaugePotential& potential, const Vec3& q) {
  return curvature_from(potential.algebra(), potential.value(q), potential.jacobian(q));
}

double BianchiResidual::max_abs() const {
  double worst = 0.0;
  for (double v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

double BianchiResidual::max_abs_contracted(const VecX& e) const {
  if (e.size() != dim_) throw ShapeError("contraction vector does not match algebra dimension");
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        double sum = 0.0;
        for (int s = 0; s < dim_; ++s) sum += e[s] * (*this)(s, i, j, l);
        worst = std::max(worst, std::abs(sum));
      }
    }
  }
  return worst;
}

BianchiResidual bianchi_residual(const CurvatureField& field, const GaugePotential* potential,
                                 const Vec3& q) {
  const StructureConstants& sc = field.algebra();
  const int n = sc.dim();
  const bool abelian = sc.is_abelian();
  if (!abelian && potential == nullptr) {
    throw MissingPotentialError("non-abelian Bianchi residual needs the gauge potential");
  }
  if (!abelian && potential->dim() != n) {
    throw ShapeError("potential and curvature live in different algebras");
  }

  const auto d = field.derivative(q);
  BianchiResidual res(n);
  for (int s = 0; s < n; ++s) {
    const auto su = static_cast<std::size_t>(s);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) {
          res(s, i, j, l) = d[l][su](i, j) + d[i][su](j, l) + d[j][su](l, i);
        }
      }
    }
  }
  if (abelian) return res;

  const MatX a = potential->value(q);
  const Curvature f = field.value(q);
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < n; ++k) {
      for (int r = 0; r < n; ++r) {
        const double c = sc(s, k, r);
        if (c == 0.0) continue;
        const Mat3& fr = f[static_cast<std::size_t>(r)];
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) {
              res(s, i, j, l) +=
                  c * (a(k, l) * fr(i, j) + a(k, i) * fr(j, l) + a(k, j) * fr(l, i));
            }
          }
        }
      }
    }
  }
  return res;
}

}  // namespace symred
