#include "symred/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "symred/error.hpp"

namespace symred {

HamiltonianSpec HamiltonianSpec::free() { return HamiltonianSpec(Kind::free); }

HamiltonianSpec HamiltonianSpec::coupled(std::shared_ptr<const GaugePotential> potential,
                                         double charge) {
  if (!potential) throw MissingPotentialError("coupled Hamiltonian needs a potential");
  HamiltonianSpec h(Kind::coupled);
  h.potential_ = std::move(potential);
  h.charge_ = charge;
  return h;
}

HamiltonianSpec HamiltonianSpec::custom(Observable obs) {
  HamiltonianSpec h(Kind::custom);
  h.custom_ = std::make_shared<const Observable>(std::move(obs));
  return h;
}

namespace {

VecX charges(const HamiltonianSpec& h, const PhasePoint& x) {
  if (x.has_internal()) {
    if (x.internal_dim() != h.potential()->dim()) {
      throw ShapeError("internal variables do not match the potential's algebra");
    }
    return x.y();
  }
  if (h.potential()->dim() != 1) {
    throw ConfigurationError("non-abelian coupled Hamiltonian needs internal variables");
  }
  return VecX::Constant(1, h.charge());
}

Vec3 kinetic_momentum(const HamiltonianSpec& h, const PhasePoint& x, const VecX& y) {
  return x.p() - h.potential()->value(x.q()).transpose() * y;
}

}  // namespace

double HamiltonianSpec::operator()(const PhasePoint& x) const {
  switch (kind_) {
    case Kind::free:
      return 0.5 * x.p().squaredNorm();
    case Kind::coupled:
      return 0.5 * kinetic_momentum(*this, x, charges(*this, x)).squaredNorm();
    case Kind::custom:
      return (*custom_)(x);
  }
  return 0.0;
}

VecX HamiltonianSpec::gradient(const PhasePoint& x, int active_dim) const {
  VecX g = VecX::Zero(active_dim);
  switch (kind_) {
    case Kind::free:
      g.segment<3>(3) = x.p();
      break;
    case Kind::coupled: {
      const VecX y = charges(*this, x);
      const Vec3 v = kinetic_momentum(*this, x, y);
      const MatX a = potential_->value(x.q());
      const auto jac = potential_->jacobian(x.q());
      g.segment<3>(3) = v;
      for (int l = 0; l < 3; ++l) {
        double d = 0.0;
        for (int s = 0; s < y.size(); ++s) {
          for (int j = 0; j < 3; ++j) d -= v[j] * y[s] * jac[static_cast<std::size_t>(s)](l, j);
        }
        g[l] = d;
      }
      if (active_dim > 6) {
        const int n = x.internal_dim();
        for (int s = 0; s < n; ++s) g[6 + n + s] = -a.row(s).dot(v);
      }
      break;
    }
    case Kind::custom:
      g = custom_->gradient(x, active_dim);
      break;
  }
  return g;
}

std::string to_string(HamiltonianSpec::Kind kind) {
  switch (kind) {
    case HamiltonianSpec::Kind::free: return "free";
    case HamiltonianSpec::Kind::coupled: return "coupled";
    case HamiltonianSpec::Kind::custom: return "custom";
  }
  return "?";
}

VecX vector_field(const BracketSpec& spec, const HamiltonianSpec& h, const PhasePoint& x) {
  const int dim = spec.active_dim();
  const VecX grad = h.gradient(x, dim);
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericalError("Hamiltonian gradient is not finite in coordinate " + std::to_string(i));
    }
  }
  return bivector(spec, x) * grad;
}

std::string to_string(Method method) { return method == Method::rk4 ? "rk4" : "boris"; }

Method parse_method(const std::string& name) {
  if (name == "rk4") return Method::rk4;
  if (name == "boris") return Method::boris;
  throw ConfigurationError("unknown integrator '" + name + "'");
}

std::vector<Casimir> casimirs(const BracketSpec& spec, const PhasePoint& x) {
  std::vector<Casimir> out;
  if (!spec.uses_internal() || x.internal_dim() != spec.internal_dim()) return out;
  const StructureConstants& sc = spec.algebra();
  const VecX& y = x.y();
  if (sc.is_abelian()) {
    for (int s = 0; s < y.size(); ++s) out.push_back({"y" + std::to_string(s + 1), y[s]});
  } else if (sc == StructureConstants::so3()) {
    out.push_back({"sum_y2", y.squaredNorm()});
  } else if (sc == StructureConstants::heisenberg()) {
    out.push_back({"y3", y[2]});
  }
  return out;
}

namespace {

PhasePoint advance(const PhasePoint& x, const VecX& delta, int dim) {
  return x.with_coordinates(x.coordinates(dim) + delta);
}

PhasePoint rk4_step(const BracketSpec& spec, const HamiltonianSpec& h, const PhasePoint& x,
                    double dt) {
  const int dim = spec.active_dim();
  const VecX k1 = vector_field(spec, h, x);
  const VecX k2 = vector_field(spec, h, advance(x, 0.5 * dt * k1, dim));
  const VecX k3 = vector_field(spec, h, advance(x, 0.5 * dt * k2, dim));
  const VecX k4 = vector_field(spec, h, advance(x, dt * k3, dim));
  return advance(x, dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), dim);
}

// Drift half step, exact-norm rotation of p about B, drift half step, where
// p' = p x B with B_k = eps_kij F_ij / 2.
PhasePoint boris_step(const BracketSpec& spec, const PhasePoint& x, double dt) {
  PhasePoint out = x;
  out.q() += 0.5 * dt * x.p();
  const Mat3& f = spec.field()->value(out.q())[0];
  const Vec3 b(f(1, 2), f(2, 0), f(0, 1));
  const Vec3 t = 0.5 * dt * b;
  const Vec3 s = 2.0 * t / (1.0 + t.squaredNorm());
  const Vec3 p = x.p();
  const Vec3 prime = p + p.cross(t);
  out.p() = p + prime.cross(s);
  out.q() += 0.5 * dt * out.p();
  return out;
}

bool finite(const PhasePoint& x) { return x.coordinates().allFinite(); }

}  // namespace

Trajectory integrate(const BracketSpec& spec, const HamiltonianSpec& h, const PhasePoint& x0,
                     double duration, double step, Method method) {
  if (!(step > 0.0)) throw ConfigurationError("integration step must be positive");
  if (!(duration >= step)) throw ConfigurationError("duration must be at least one step");
  if (method == Method::boris &&
      (spec.kind() != BracketKind::magnetic || h.kind() != HamiltonianSpec::Kind::free)) {
    throw ConfigurationError("boris integrator needs a magnetic bracket and the free Hamiltonian");
  }
  if (spec.uses_internal() && x0.internal_dim() != spec.internal_dim()) {
    throw ShapeError("initial point lacks the bracket's internal variables");
  }

  const auto steps = static_cast<long>(std::ceil(duration / step * (1.0 - 1e-12)));
  const double dt = duration / static_cast<double>(steps);

  Trajectory traj;
  traj.step = dt;
  traj.times.reserve(static_cast<std::size_t>(steps + 1));
  traj.states.reserve(static_cast<std::size_t>(steps + 1));
  for (const auto& c : casimirs(spec, x0)) traj.casimir_names.push_back(c.name);

  auto record = [&](double t, const PhasePoint& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.energy.push_back(h(x));
    std::vector<double> values;
    for (const auto& c : casimirs(spec, x)) values.push_back(c.value);
    traj.casimir_values.push_back(std::move(values));
  };

  PhasePoint x = x0;
  record(0.0, x);
  for (long n = 1; n <= steps; ++n) {
    try {
      x = method == Method::rk4 ? rk4_step(spec, h, x, dt) : boris_step(spec, x, dt);
    } catch (const NumericalError& e) {
      throw DivergenceError(std::string("integration failed at step ") + std::to_string(n) +
                                ": " + e.what(),
                            n);
    }
    if (!finite(x)) {
      std::ostringstream msg;
      msg << "state became non-finite at step " << n << " (t = " << n * dt << ")";
      throw DivergenceError(msg.str(), n);
    }
    record(static_cast<double>(n) * dt, x);
  }
  return traj;
}

}  // namespace symred
