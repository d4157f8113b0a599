#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symred/gauge_field.hpp"
#include "symred/poisson.hpp"

namespace symred {

// Particle Hamiltonian (unit mass).
//
//   free:    H = |p|^2 / 2
//   coupled: H = |p - sum_s y_s A^(s)(q)|^2 / 2, for a bracket whose momenta are
//            already minimally coupled (canonical or canonicalized_ym). Without
//            internal variables the abelian charge stands in for y_1.
//   custom:  any observable
class HamiltonianSpec {
 public:
  enum class Kind { free, coupled, custom };

  static HamiltonianSpec free();
  static HamiltonianSpec coupled(std::shared_ptr<const GaugePotential> potential, double charge = 1.0);
  static HamiltonianSpec custom(Observable h);

  Kind kind() const { return kind_; }
  const std::shared_ptr<const GaugePotential>& potential() const { return potential_; }
  double charge() const { return charge_; }

  double operator()(const PhasePoint& x) const;
  VecX gradient(const PhasePoint& x, int active_dim) const;

 private:
  explicit HamiltonianSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const GaugePotential> potential_;
  double charge_ = 1.0;
  std::shared_ptr<const Observable> custom_;
};

std::string to_string(HamiltonianSpec::Kind kind);

// x' = Pi(x) grad H(x) over the active coordinates.
VecX vector_field(const BracketSpec& spec, const HamiltonianSpec& h, const PhasePoint& x);

enum class Method { rk4, boris };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct Casimir {
  std::string name;
  double value;
};

// Casimir candidates of the y-block for the built-in algebras: so(3) gives
// sum y_s^2, abelian gives every y_s, heisenberg gives y_3. Any other algebra
// (and any bracket without internal variables) gives an empty list.
std::vector<Casimir> casimirs(const BracketSpec& spec, const PhasePoint& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<double> energy;
  std::vector<std::string> casimir_names;
  // casimir_values[step][c]
  std::vector<std::vector<double>> casimir_values;
  double step = 0.0;

  std::size_t size() const { return times.size(); }
};

// Fixed step h' = T / ceil(T / h) so that the last sample lands on T.
// Boris needs a magnetic bracket and the free Hamiltonian.
// Throws DivergenceError with the failing step index on non-finite states.
Trajectory integrate(const BracketSpec& spec, const HamiltonianSpec& h, const PhasePoint& x0,
                     double duration, double step, Method method = Method::rk4);

}  // namespace symred
