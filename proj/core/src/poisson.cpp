#include "symred/poisson.hpp"

#include <cmath>
#include <sstream>

#include "symred/error.hpp"
#include "symred/finite_difference.hpp"
#include "symred/sampling.hpp"

namespace symred {

namespace {

constexpr int kQ = 0;
constexpr int kP = 3;

// Fills Pi(i, j) = v and Pi(j, i) = -v so antisymmetry is exact.
void put(MatX& pi, int i, int j, double v) {
  pi(i, j) = v;
  pi(j, i) = -v;
}

void put_canonical(MatX& pi) {
  for (int i = 0; i < 3; ++i) put(pi, kQ + i, kP + i, 1.0);
}

void put_momentum_block(MatX& pi, const Curvature& f, const VecX& weights) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      double v = 0.0;
      for (std::size_t s = 0; s < f.size(); ++s) v += weights[static_cast<Eigen::Index>(s)] * f[s](i, j);
      put(pi, kP + i, kP + j, v);
    }
  }
}

void put_internal_block(MatX& pi, const StructureConstants& sc, const VecX& u, const VecX& y) {
  const int n = sc.dim();
  const int u0 = 6;
  const int y0 = 6 + n;
  const MatX frame = left_invariant_frame(sc, u);
  for (int s = 0; s < n; ++s) {
    for (int k = s + 1; k < n; ++k) {
      double v = 0.0;
      for (int r = 0; r < n; ++r) v += sc(r, s, k) * y[r];
      put(pi, y0 + s, y0 + k, v);
    }
    for (int k = 0; k < n; ++k) put(pi, y0 + s, u0 + k, frame(k, s));
  }
}

void require_internal(const PhasePoint& x, int n) {
  if (x.internal_dim() != n) {
    std::ostringstream msg;
    msg << "bracket needs internal variables (u, y) of dimension " << n << ", point has "
        << x.internal_dim();
    throw ConfigurationError(msg.str());
  }
}

std::shared_ptr<const CurvatureField> require_field(std::shared_ptr<const CurvatureField> f) {
  if (!f) throw ConfigurationError("bracket needs a curvature field");
  return f;
}

}  // namespace

PhasePoint::PhasePoint(const Vec3& q, const Vec3& p, const VecX& u, const VecX& y)
    : q_(q), p_(p), u_(u), y_(y) {
  if (u.size() != y.size()) {
    throw ShapeError("internal variables u and y must have the same length");
  }
}

PhasePoint PhasePoint::from_coordinates(const VecX& coords) {
  if (coords.size() < 6 || coords.size() % 2 != 0) {
    throw ShapeError("flat coordinate vector must have length 6 + 2n");
  }
  const auto n = (coords.size() - 6) / 2;
  return PhasePoint(coords.segment<3>(0), coords.segment<3>(3), coords.segment(6, n),
                    coords.segment(6 + n, n));
}

VecX PhasePoint::coordinates() const {
  const int n = internal_dim();
  VecX c(6 + 2 * n);
  c << q_, p_, u_, y_;
  return c;
}

VecX PhasePoint::coordinates(int active_dim) const {
  const VecX all = coordinates();
  if (active_dim > all.size()) throw ShapeError("point lacks the requested active coordinates");
  return all.head(active_dim);
}

PhasePoint PhasePoint::with_coordinates(const VecX& coords) const {
  VecX all = coordinates();
  if (coords.size() > all.size()) throw ShapeError("too many coordinates for this point");
  all.head(coords.size()) = coords;
  return from_coordinates(all);
}

std::string to_string(BracketKind kind) {
  switch (kind) {
    case BracketKind::canonical: return "canonical";
    case BracketKind::magnetic: return "magnetic";
    case BracketKind::reduced_ym: return "reduced_ym";
    case BracketKind::extended_ym: return "extended_ym";
    case BracketKind::canonicalized_ym: return "canonicalized_ym";
  }
  return "?";
}

BracketSpec BracketSpec::canonical() {
  return BracketSpec(BracketKind::canonical, StructureConstants::abelian(1));
}

BracketSpec BracketSpec::magnetic(std::shared_ptr<const CurvatureField> field) {
  field = require_field(std::move(field));
  if (field->dim() != 1 || !field->algebra().is_abelian()) {
    throw ConfigurationError("magnetic bracket needs a one-dimensional abelian curvature");
  }
  BracketSpec spec(BracketKind::magnetic, field->algebra());
  spec.field_ = std::move(field);
  spec.xi_ = DualElement{VecX::Ones(1)};
  return spec;
}

BracketSpec BracketSpec::reduced_ym(std::shared_ptr<const CurvatureField> field, DualElement xi,
                                    double tolerance) {
  field = require_field(std::move(field));
  const GateResult gate = invariance_gate(field->algebra(), xi, tolerance);
  if (!gate.passed) {
    std::ostringstream msg;
    msg << "dual element is not coadjoint invariant: residual " << gate.max_residual
        << " at (s, k) = (" << gate.s + 1 << ", " << gate.k + 1 << ")";
    throw InvarianceError(msg.str(), gate.s, gate.k, gate.max_residual);
  }
  BracketSpec spec(BracketKind::reduced_ym, field->algebra());
  spec.field_ = std::move(field);
  spec.xi_ = std::move(xi);
  return spec;
}

BracketSpec BracketSpec::extended_ym(std::shared_ptr<const CurvatureField> field,
                                     std::shared_ptr<const GaugePotential> potential) {
  field = require_field(std::move(field));
  if (!potential) throw MissingPotentialError("extended bracket needs the gauge potential");
  if (!(potential->algebra() == field->algebra())) {
    throw ConfigurationError("curvature and potential live in different algebras");
  }
  BracketSpec spec(BracketKind::extended_ym, field->algebra());
  spec.field_ = std::move(field);
  spec.potential_ = std::move(potential);
  return spec;
}

BracketSpec BracketSpec::canonicalized_ym(StructureConstants algebra) {
  return BracketSpec(BracketKind::canonicalized_ym, std::move(algebra));
}

std::vector<std::string> BracketSpec::coordinate_names() const {
  const bool tilde = kind_ == BracketKind::canonicalized_ym;
  std::vector<std::string> names{"q1", "q2", "q3"};
  for (int i = 1; i <= 3; ++i) names.push_back((tilde ? "pt" : "p") + std::to_string(i));
  for (int s = 1; s <= internal_dim(); ++s) names.push_back("u" + std::to_string(s));
  for (int s = 1; s <= internal_dim(); ++s) names.push_back("y" + std::to_string(s));
  return names;
}

MatX left_invariant_frame(const StructureConstants& algebra, const VecX& u) {
  const int n = algebra.dim();
  if (u.size() != n) throw ShapeError("frame: u does not match algebra dimension");
  if (algebra.is_abelian()) return MatX::Identity(n, n);

  // (1 - exp(-X)) / X = sum_m (-X)^m / (m + 1)!, entire, so the series converges
  // for every u; the frame is its inverse.
  const MatX minus_ad = -algebra.ad(u);
  MatX term = MatX::Identity(n, n);
  MatX series = term;
  for (int m = 1; m < 200; ++m) {
    term = term * minus_ad / static_cast<double>(m + 1);
    series += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * series.cwiseAbs().maxCoeff()) break;
  }
  return series.partialPivLu().inverse();
}

MatX bivector(const BracketSpec& spec, const PhasePoint& x) {
  const int dim = spec.active_dim();
  MatX pi = MatX::Zero(dim, dim);
  put_canonical(pi);

  switch (spec.kind()) {
    case BracketKind::canonical:
      break;
    case BracketKind::magnetic:
    case BracketKind::reduced_ym:
      put_momentum_block(pi, spec.field()->value(x.q()), spec.xi().e);
      break;
    case BracketKind::extended_ym: {
      const StructureConstants& sc = spec.algebra();
      const int n = sc.dim();
      require_internal(x, n);
      put_momentum_block(pi, spec.field()->value(x.q()), x.y());
      put_internal_block(pi, sc, x.u(), x.y());

      const MatX a = spec.potential()->value(x.q());
      const MatX frame = left_invariant_frame(sc, x.u());
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          for (int r = 0; r < n; ++r) v -= a(r, j) * frame(k, r);
          put(pi, kP + j, 6 + k, v);
        }
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int r = 0; r < n; ++r) {
            for (int m = 0; m < n; ++m) v -= sc(m, s, r) * a(r, j) * x.y()[m];
          }
          put(pi, 6 + n + s, kP + j, v);
        }
      }
      break;
    }
    case BracketKind::canonicalized_ym:
      require_internal(x, spec.algebra().dim());
      put_internal_block(pi, spec.algebra(), x.u(), x.y());
      break;
  }
  return pi;
}

std::string bracket_entry_formula(const BracketSpec& spec, int a, int b) {
  const int n = spec.internal_dim();
  const int dim = spec.active_dim();
  if (a < 0 || b < 0 || a >= dim || b >= dim) throw ShapeError("coordinate index out of range");
  if (a > b) {
    const std::string f = bracket_entry_formula(spec, b, a);
    if (f == "0") return f;
    return "-(" + f + ")";
  }
  auto block = [n](int i) {
    if (i < 3) return 'q';
    if (i < 6) return 'p';
    if (i < 6 + n) return 'u';
    return 'y';
  };
  auto local = [n](int i) {
    if (i < 6) return i % 3 + 1;
    if (i < 6 + n) return i - 6 + 1;
    return i - 6 - n + 1;
  };
  const char ba = block(a);
  const char bb = block(b);
  const int ia = local(a);
  const int ib = local(b);
  const bool ext = spec.kind() == BracketKind::extended_ym;
  const bool can = spec.kind() == BracketKind::canonicalized_ym;
  const auto pair = std::to_string(ia) + std::to_string(ib);

  if (ba == 'q' && bb == 'p') return ia == ib ? "1" : "0";
  if (ba == 'p' && bb == 'p') {
    if (a == b) return "0";
    switch (spec.kind()) {
      case BracketKind::magnetic: return "F_" + pair + "(q)";
      case BracketKind::reduced_ym: return "sum_s e_s F^(s)_" + pair + "(q)";
      case BracketKind::extended_ym: return "sum_s y_s F^(s)_" + pair + "(q)";
      default: return "0";
    }
  }
  if (ba == 'p' && bb == 'u' && ext) {
    return "-sum_r A^(r)_" + std::to_string(ia) + "(q) L^" + std::to_string(ib) + "_r(u)";
  }
  if (ba == 'u' && bb == 'y') return "-L^" + std::to_string(ia) + "_" + std::to_string(ib) + "(u)";
  if (ba == 'p' && bb == 'y' && ext) {
    return "sum_{r,m} c^m_{" + std::to_string(ib) + "r} A^(r)_" + std::to_string(ia) + "(q) y_m";
  }
  if (ba == 'y' && bb == 'y' && (ext || can) && a != b) {
    return "sum_r c^r_{" + pair + "} y_r";
  }
  return "0";
}

Observable::Observable(Evaluator f, Gradient gradient, double fd_step)
    : f_(std::move(f)), gradient_(std::move(gradient)), fd_step_(fd_step) {
  if (!f_) throw ConfigurationError("observable needs an evaluator");
}

Observable Observable::coordinate(int index) {
  if (index < 0) throw ShapeError("negative coordinate index");
  return Observable(
      [index](const PhasePoint& x) {
        const VecX c = x.coordinates();
        if (index >= c.size()) throw ShapeError("coordinate index out of range");
        return c[index];
      },
      [index](const PhasePoint&, int active_dim) {
        if (index >= active_dim) throw ShapeError("coordinate index outside active coordinates");
        VecX g = VecX::Zero(active_dim);
        g[index] = 1.0;
        return g;
      });
}

Observable Observable::constant(double value) {
  return Observable([value](const PhasePoint&) { return value; },
                    [](const PhasePoint&, int active_dim) { return VecX(VecX::Zero(active_dim)); });
}

VecX Observable::gradient(const PhasePoint& x, int active_dim) const {
  VecX g;
  if (gradient_) {
    g = gradient_(x, active_dim);
  } else {
    const VecX base = x.coordinates(active_dim);
    g.resize(active_dim);
    for (int d = 0; d < active_dim; ++d) {
      g[d] = central_difference(
          [&](double t) {
            VecX c = base;
            c[d] += t;
            return f_(x.with_coordinates(c));
          },
          fd_step_);
    }
  }
  for (int d = 0; d < g.size(); ++d) {
    if (!std::isfinite(g[d])) {
      std::ostringstream msg;
      msg << "observable gradient is not finite in coordinate " << d << " at q = ("
          << x.q().transpose() << "), p = (" << x.p().transpose() << ")";
      throw NumericalError(msg.str());
    }
  }
  return g;
}

Observable operator*(const Observable& f, const Observable& g) {
  auto value = [f, g](const PhasePoint& x) { return f(x) * g(x); };
  if (!f.has_analytic_gradient() || !g.has_analytic_gradient()) {
    return Observable(value, {}, std::min(f.fd_step_, g.fd_step_));
  }
  return Observable(value, [f, g](const PhasePoint& x, int dim) {
    return VecX(f(x) * g.gradient(x, dim) + g(x) * f.gradient(x, dim));
  });
}

Observable operator+(const Observable& f, const Observable& g) {
  auto value = [f, g](const PhasePoint& x) { return f(x) + g(x); };
  if (!f.has_analytic_gradient() || !g.has_analytic_gradient()) {
    return Observable(value, {}, std::min(f.fd_step_, g.fd_step_));
  }
  return Observable(value, [f, g](const PhasePoint& x, int dim) {
    return VecX(f.gradient(x, dim) + g.gradient(x, dim));
  });
}

double bracket(const BracketSpec& spec, const Observable& f, const Observable& g,
               const PhasePoint& x) {
  const int dim = spec.active_dim();
  const MatX pi = bivector(spec, x);
  return f.gradient(x, dim).dot(pi * g.gradient(x, dim));
}

std::vector<MatX> bivector_derivative(const BracketSpec& spec, const PhasePoint& x,
                                      double fd_step) {
  const int dim = spec.active_dim();
  const VecX base = x.coordinates(dim);
  std::vector<MatX> d(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    d[static_cast<std::size_t>(k)] = central_difference(
        [&](double t) {
          VecX c = base;
          c[k] += t;
          return MatX(bivector(spec, x.with_coordinates(c)));
        },
        fd_step);
  }
  return d;
}

namespace {

double jacobiator_from(const MatX& pi, const std::vector<MatX>& dpi, int a, int b, int c) {
  double sum = 0.0;
  for (std::size_t d = 0; d < dpi.size(); ++d) {
    const auto di = static_cast<Eigen::Index>(d);
    sum += pi(di, a) * dpi[d](b, c) + pi(di, b) * dpi[d](c, a) + pi(di, c) * dpi[d](a, b);
  }
  return sum;
}

}  // namespace

double jacobiator(const BracketSpec& spec, int a, int b, int c, const PhasePoint& x,
                  double fd_step) {
  const int dim = spec.active_dim();
  for (int i : {a, b, c}) {
    if (i < 0 || i >= dim) throw ShapeError("jacobiator index out of range");
  }
  return jacobiator_from(bivector(spec, x), bivector_derivative(spec, x, fd_step), a, b, c);
}

JacobiatorMax max_jacobiator(const BracketSpec& spec, const PhasePoint& x, double fd_step) {
  const int dim = spec.active_dim();
  const MatX pi = bivector(spec, x);
  const auto dpi = bivector_derivative(spec, x, fd_step);
  JacobiatorMax best;
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      for (int c = b + 1; c < dim; ++c) {
        const double v = std::abs(jacobiator_from(pi, dpi, a, b, c));
        if (v > best.value || best.triple[0] < 0) {
          best.value = v;
          best.triple = {a, b, c};
        }
      }
    }
  }
  return best;
}

namespace {

VecX coupling_charges(const PhasePoint& x, const GaugePotential& potential, double charge) {
  if (x.has_internal()) {
    if (x.internal_dim() != potential.dim()) {
      throw ShapeError("internal variables do not match the potential's algebra");
    }
    return x.y();
  }
  if (potential.dim() != 1) {
    throw ConfigurationError("non-abelian minimal coupling needs internal variables");
  }
  return VecX::Constant(1, charge);
}

PhasePoint shift_momentum(const PhasePoint& x, const GaugePotential& potential, double charge,
                          double sign) {
  const VecX y = coupling_charges(x, potential, charge);
  const MatX a = potential.value(x.q());
  PhasePoint out = x;
  out.p() += sign * (a.transpose() * y);
  return out;
}

}  // namespace

PhasePoint minimal_coupling(const PhasePoint& x, const GaugePotential& potential, double charge) {
  return shift_momentum(x, potential, charge, 1.0);
}

PhasePoint inverse_minimal_coupling(const PhasePoint& x, const GaugePotential& potential,
                                    double charge) {
  return shift_momentum(x, potential, charge, -1.0);
}

double canonicalization_residual(const std::shared_ptr<const GaugePotential>& potential,
                                 const std::shared_ptr<const CurvatureField>& field,
                                 std::span<const PhasePoint> sample) {
  const BracketSpec extended = BracketSpec::extended_ym(field, potential);
  const BracketSpec target = BracketSpec::canonicalized_ym(potential->algebra());
  const int n = potential->dim();
  const int dim = extended.active_dim();

  double worst = 0.0;
  for (const PhasePoint& x : sample) {
    require_internal(x, n);
    const MatX pi = bivector(extended, x);
    const MatX a = potential->value(x.q());
    const auto jac = potential->jacobian(x.q());

    // Jacobian of (q, p, u, y) -> (q, p~, u, y).
    MatX t = MatX::Identity(dim, dim);
    for (int i = 0; i < 3; ++i) {
      for (int l = 0; l < 3; ++l) {
        double v = 0.0;
        for (int s = 0; s < n; ++s) v += x.y()[s] * jac[static_cast<std::size_t>(s)](l, i);
        t(kP + i, kQ + l) = v;
      }
      for (int s = 0; s < n; ++s) t(kP + i, 6 + n + s) = a(s, i);
    }
    const MatX transformed = t * pi * t.transpose();
    const MatX expected = bivector(target, minimal_coupling(x, *potential));
    worst = std::max(worst, (transformed - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<PhasePoint> sample_phase_points(std::uint64_t seed, int count, int internal_dim,
                                            const DomainBox& box) {
  Rng rng(seed);
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec3 q;
    for (int k = 0; k < 3; ++k) q[k] = rng.uniform(box.lower[k], box.upper[k]);
    Vec3 p;
    for (int k = 0; k < 3; ++k) p[k] = rng.uniform(-1.0, 1.0);
    if (internal_dim > 0) {
      const VecX u = rng.uniform_vector(internal_dim, -1.0, 1.0);
      const VecX y = rng.uniform_vector(internal_dim, -1.0, 1.0);
      out.emplace_back(q, p, u, y);
    } else {
      out.emplace_back(q, p);
    }
  }
  return out;
}

}  // namespace symred
