#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "artifacts.hpp"
#include "symred/dynamics.hpp"
#include "symred/error.hpp"
#include "symred/maxwell_field.hpp"
#include "symred/poisson.hpp"
#include "symred/potentials.hpp"
#include "symred/reduction.hpp"
#include "symred/sampling.hpp"

namespace fs = std::filesystem;

namespace symred::cli {

namespace {

enum class Level { quiet, warn, info, debug };

Level log_level() {
  const char* env = std::getenv("SYMRED_LOG");
  if (!env) return Level::warn;
  const std::string v = env;
  if (v == "quiet") return Level::quiet;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

class Log {
 public:
  explicit Log(std::ostream& out) : out_(out), level_(log_level()) {}
  void info(const std::string& msg) const { emit(Level::info, "info", msg); }
  void debug(const std::string& msg) const { emit(Level::debug, "debug", msg); }
  void warn(const std::string& msg) const { emit(Level::warn, "warning", msg); }

 private:
  void emit(Level at, const char* tag, const std::string& msg) const {
    if (level_ >= at) out_ << "symred: " << tag << ": " << msg << '\n';
  }
  std::ostream& out_;
  Level level_;
};

struct Check {
  std::string name;
  double value;
  std::string comparison;  // "<=" or ">="
  double tolerance;
  std::string detail;

  bool passed() const {
    if (!std::isfinite(value)) return false;
    return comparison == "<=" ? value <= tolerance : value >= tolerance;
  }
};

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["comparison"] = c.comparison;
  j["tolerance"] = c.tolerance;
  j["passed"] = c.passed();
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

// Everything a scenario needs, read once from the table.
struct Scenario {
  std::string mode;
  std::string name;
  std::uint64_t seed = 0;
  bool has_seed = false;
  const Table* config = nullptr;
  fs::path out;
  Json extra = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;

  double tolerance(const std::string& key, double fallback) const {
    return config->number_or("tolerances." + key, fallback);
  }
  void check_le(const std::string& check, double value, double tol, std::string detail = {}) {
    checks.push_back({check, value, "<=", tol, std::move(detail)});
  }
  void check_ge(const std::string& check, double value, double tol, std::string detail = {}) {
    checks.push_back({check, value, ">=", tol, std::move(detail)});
  }
  std::uint64_t require_seed() const {
    if (!has_seed) {
      throw ConfigurationError("randomised scenario needs a seed ([run] seed or --seed)");
    }
    return seed;
  }
};

DomainBox box_from(const Table& t) {
  DomainBox box;
  if (auto b = t.numbers_opt("sampling.box")) {
    if (b->size() != 2 || !((*b)[0] < (*b)[1])) {
      throw ConfigurationError("key 'sampling.box' must be [lower, upper] with lower < upper");
    }
    box.lower = Vec3::Constant((*b)[0]);
    box.upper = Vec3::Constant((*b)[1]);
  }
  return box;
}

StructureConstants algebra_from(const Table& t) {
  const std::string preset = t.string_or("algebra.preset", "abelian");
  const int dim = t.integer_or("algebra.dim", preset == "abelian" ? 1 : 3);
  if (preset != "abelian" && preset != "so3" && preset != "heisenberg") {
    throw ConfigurationError("unknown preset '" + preset + "' for key 'algebra.preset'");
  }
  if (preset != "abelian" && dim != 3) {
    throw ConfigurationError("key 'algebra.dim' must be 3 for preset '" + preset + "'");
  }
  return StructureConstants::preset(preset, dim);
}

using PotentialPtr = std::shared_ptr<const GaugePotential>;
using FieldPtr = std::shared_ptr<const CurvatureField>;

std::vector<PotentialPtr> potentials_from(const Scenario& sc, const StructureConstants& algebra) {
  const Table& t = *sc.config;
  const std::string preset = t.string_or("potential.preset", "zero");
  const DomainBox box = box_from(t);
  std::vector<PotentialPtr> out;
  auto need_abelian1 = [&] {
    if (algebra.dim() != 1 || !algebra.is_abelian()) {
      throw ConfigurationError("potential preset '" + preset + "' needs the abelian algebra of dimension 1");
    }
  };
  if (preset == "random-trig") {
    const std::uint64_t seed = sc.require_seed();
    const int count = t.integer_or("potential.count", 1);
    const int modes = t.integer_or("potential.modes", 4);
    const int maxk = t.integer_or("potential.max_wavenumber", 3);
    if (count < 1) throw ConfigurationError("key 'potential.count' must be positive");
    for (int i = 0; i < count; ++i) {
      const TermField terms = random_trig_field(3 * algebra.dim(),
                                                derive_seed(seed, 1000 + static_cast<std::uint64_t>(i)),
                                                modes, maxk);
      out.push_back(std::make_shared<const GaugePotential>(GaugePotential::from_terms(algebra, terms, box)));
    }
    return out;
  }
  if (preset == "uniform-b") {
    need_abelian1();
    out.push_back(std::make_shared<const GaugePotential>(uniform_b_potential(t.number_or("potential.b", 1.0), box)));
  } else if (preset == "linear") {
    need_abelian1();
    const auto m = t.numbers("potential.matrix");
    if (m.size() != 9) throw ConfigurationError("key 'potential.matrix' needs 9 entries");
    Mat3 mat;
    for (int i = 0; i < 9; ++i) mat(i / 3, i % 3) = m[static_cast<std::size_t>(i)];
    out.push_back(std::make_shared<const GaugePotential>(linear_potential(mat, box)));
  } else if (preset == "so3-constant") {
    if (!(algebra == StructureConstants::so3())) {
      throw ConfigurationError("potential preset 'so3-constant' needs algebra preset 'so3'");
    }
    const double a = t.number_or("potential.amplitude", 1.0);
    std::vector<FieldTerm> terms;
    for (int k = 0; k < 3; ++k) terms.push_back({k * 3 + k, FieldTerm::Kind::polynomial, a, {0, 0, 0}});
    out.push_back(std::make_shared<const GaugePotential>(
        GaugePotential::from_terms(algebra, TermField(9, std::move(terms)), box)));
  } else if (preset == "zero") {
    out.push_back(std::make_shared<const GaugePotential>(zero_potential(algebra, box)));
  } else {
    throw ConfigurationError("unknown preset '" + preset + "' for key 'potential.preset'");
  }
  return out;
}

std::optional<CurvatureField> perturbation_from(const Table& t, const StructureConstants& algebra) {
  if (!t.has("perturbation.kind")) return std::nullopt;
  const std::string kind = t.string("perturbation.kind");
  if (kind != "f12-q3") {
    throw ConfigurationError("unknown preset '" + kind + "' for key 'perturbation.kind'");
  }
  const double scale = t.number_or("perturbation.scale", 1.0);
  const int component = t.integer_or("perturbation.component", 1);
  if (component < 1 || component > algebra.dim()) {
    throw ConfigurationError("key 'perturbation.component' out of range");
  }
  const DomainBox box = box_from(t);
  std::vector<FieldTerm> terms{
      {(component - 1) * 3 + 2, FieldTerm::Kind::polynomial, scale, {0, 0, 1}}};
  return CurvatureField::from_terms(algebra, TermField(3 * algebra.dim(), std::move(terms)), box);
}

FieldPtr field_for(const PotentialPtr& pot, const std::optional<CurvatureField>& perturbation) {
  CurvatureField f = CurvatureField::from_potential(pot);
  if (perturbation) f = f.plus(*perturbation);
  return std::make_shared<const CurvatureField>(std::move(f));
}

DualElement xi_from(const Table& t, const StructureConstants& algebra) {
  DualElement xi{VecX::Zero(algebra.dim())};
  if (auto v = t.numbers_opt("reduction.xi")) {
    if (static_cast<int>(v->size()) != algebra.dim()) {
      throw ConfigurationError("key 'reduction.xi' needs " + std::to_string(algebra.dim()) + " entries");
    }
    for (int s = 0; s < algebra.dim(); ++s) xi.e[s] = (*v)[static_cast<std::size_t>(s)];
  }
  return xi;
}

BracketKind bracket_kind_from(const Table& t, const StructureConstants& algebra) {
  const std::string fallback =
      algebra.dim() == 1 && algebra.is_abelian() ? "magnetic" : "extended_ym";
  const std::string name = t.string_or("bracket.kind", fallback);
  for (BracketKind k : {BracketKind::canonical, BracketKind::magnetic, BracketKind::reduced_ym,
                        BracketKind::extended_ym, BracketKind::canonicalized_ym}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigurationError("unknown preset '" + name + "' for key 'bracket.kind'");
}

BracketSpec bracket_from(BracketKind kind, const Table& t, const StructureConstants& algebra,
                         const PotentialPtr& pot, const FieldPtr& field) {
  switch (kind) {
    case BracketKind::canonical: return BracketSpec::canonical();
    case BracketKind::magnetic: return BracketSpec::magnetic(field);
    case BracketKind::reduced_ym: return BracketSpec::reduced_ym(field, xi_from(t, algebra));
    case BracketKind::extended_ym: return BracketSpec::extended_ym(field, pot);
    case BracketKind::canonicalized_ym: return BracketSpec::canonicalized_ym(algebra);
  }
  throw ConfigurationError("unsupported bracket");
}

std::string triple_name(const BracketSpec& spec, const std::array<int, 3>& t) {
  if (t[0] < 0) return "-";
  const auto names = spec.coordinate_names();
  return names[static_cast<std::size_t>(t[0])] + " " + names[static_cast<std::size_t>(t[1])] + " " +
         names[static_cast<std::size_t>(t[2])];
}

void write_bracket_table(Scenario& sc, const BracketSpec& spec) {
  Json table;
  table["bracket"] = to_string(spec.kind());
  table["coordinates"] = spec.coordinate_names();
  Json rows = Json::array();
  const int dim = spec.active_dim();
  for (int a = 0; a < dim; ++a) {
    Json row = Json::array();
    for (int b = 0; b < dim; ++b) row.push_back(bracket_entry_formula(spec, a, b));
    rows.push_back(row);
  }
  table["entries"] = rows;
  write_json(sc.out / "bracket_table.json", table);
  sc.artifacts.push_back("bracket_table.json");
}

// verify-jacobi: coordinate-triple jacobiator over every potential and sample.
void verify_jacobi(Scenario& sc) {
  const Table& t = *sc.config;
  const StructureConstants algebra = algebra_from(t);
  const auto pots = potentials_from(sc, algebra);
  const auto perturbation = perturbation_from(t, algebra);
  const BracketKind kind = bracket_kind_from(t, algebra);
  const int points = t.integer_or("sampling.points", 50);
  const double h = t.number_or("sampling.fd_step", kDefaultFdStep);
  const DomainBox box = box_from(t);

  CsvWriter csv(sc.out / "jacobi.csv",
                {"potential", "point", "max_jacobiator", "triple", "j_p1p2p3", "bianchi_123"});
  sc.artifacts.push_back("jacobi.csv");
  double worst = 0.0;
  double worst_identity = 0.0;
  std::string worst_where = "-";
  bool identity_checked = false;
  for (std::size_t i = 0; i < pots.size(); ++i) {
    const FieldPtr field = field_for(pots[i], perturbation);
    const BracketSpec spec = bracket_from(kind, t, algebra, pots[i], field);
    if (i == 0) write_bracket_table(sc, spec);
    const auto sample = sample_phase_points(derive_seed(sc.seed, 2000 + i), points,
                                            spec.internal_dim(), box);
    for (std::size_t k = 0; k < sample.size(); ++k) {
      const JacobiatorMax jm = max_jacobiator(spec, sample[k], h);
      std::string j123 = "";
      std::string r123 = "";
      if (kind == BracketKind::magnetic) {
        const double j = jacobiator(spec, 3, 4, 5, sample[k], h);
        const double r = bianchi_residual(*field, pots[i].get(), sample[k].q())(0, 0, 1, 2);
        worst_identity = std::max(worst_identity, std::abs(j - r));
        identity_checked = true;
        j123 = format_double(j);
        r123 = format_double(r);
      }
      if (jm.value > worst || worst_where == "-") {
        worst = std::max(worst, jm.value);
        worst_where = "potential " + std::to_string(i) + ", point " + std::to_string(k) + ", triple " +
                      triple_name(spec, jm.triple);
      }
      csv.row({std::to_string(i), std::to_string(k), format_double(jm.value),
               triple_name(spec, jm.triple), j123, r123});
    }
  }
  sc.extra["bracket"] = to_string(kind);
  sc.extra["potentials"] = pots.size();
  sc.extra["samples"] = points;
  sc.extra["perturbed"] = perturbation.has_value();
  sc.check_le("max_jacobiator", worst, sc.tolerance("jacobi", 1e-6), worst_where);
  if (identity_checked) {
    sc.check_le("jacobiator_equals_bianchi", worst_identity, sc.tolerance("jacobi", 1e-6),
                "max |J(p1,p2,p3) - R_123|");
  }
}

void verify_bianchi(Scenario& sc) {
  const Table& t = *sc.config;
  const StructureConstants algebra = algebra_from(t);
  const auto pots = potentials_from(sc, algebra);
  const auto perturbation = perturbation_from(t, algebra);
  const int points = t.integer_or("sampling.points", 50);
  const DomainBox box = box_from(t);

  CsvWriter csv(sc.out / "bianchi.csv", {"potential", "point", "q1", "q2", "q3", "max_residual"});
  sc.artifacts.push_back("bianchi.csv");
  double worst = 0.0;
  for (std::size_t i = 0; i < pots.size(); ++i) {
    const FieldPtr field = field_for(pots[i], perturbation);
    const auto sample = sample_positions(derive_seed(sc.seed, 2000 + i), points, box);
    for (std::size_t k = 0; k < sample.size(); ++k) {
      const double r = bianchi_residual(*field, pots[i].get(), sample[k]).max_abs();
      worst = std::max(worst, r);
      const Vec3& q = sample[k];
      csv.row({static_cast<double>(i), static_cast<double>(k), q[0], q[1], q[2], r});
    }
  }
  sc.extra["potentials"] = pots.size();
  sc.extra["samples"] = points;
  sc.extra["perturbed"] = perturbation.has_value();
  sc.check_le("max_bianchi_residual", worst, sc.tolerance("bianchi", 1e-6));
}

void verify_minimal_coupling(Scenario& sc) {
  const Table& t = *sc.config;
  const StructureConstants algebra = algebra_from(t);
  const auto pots = potentials_from(sc, algebra);
  const auto perturbation = perturbation_from(t, algebra);
  const int points = t.integer_or("sampling.points", 50);
  const DomainBox box = box_from(t);

  CsvWriter csv(sc.out / "canonicalization.csv", {"potential", "residual"});
  sc.artifacts.push_back("canonicalization.csv");
  double worst = 0.0;
  for (std::size_t i = 0; i < pots.size(); ++i) {
    const FieldPtr field = field_for(pots[i], perturbation);
    const auto sample = sample_phase_points(derive_seed(sc.seed, 2000 + i), points, algebra.dim(), box);
    const double r = canonicalization_residual(pots[i], field, sample);
    worst = std::max(worst, r);
    csv.row({static_cast<double>(i), r});
  }
  sc.extra["potentials"] = pots.size();
  sc.extra["samples"] = points;
  sc.extra["perturbed"] = perturbation.has_value();
  sc.check_le("max_canonicalization_residual", worst, sc.tolerance("canonicalization", 1e-6));
}

void verify_reduction(Scenario& sc) {
  const Table& t = *sc.config;
  const StructureConstants algebra = algebra_from(t);
  const DualElement xi = xi_from(t, algebra);
  const auto pots = potentials_from(sc, algebra);
  const auto perturbation = perturbation_from(t, algebra);
  const int points = t.integer_or("sampling.points", 50);
  const DomainBox box = box_from(t);
  const double gate_tol = sc.tolerance("gate", kLieTolerance);

  sc.extra["samples"] = points;
  sc.extra["xi"] = std::vector<double>(xi.e.data(), xi.e.data() + xi.e.size());
  const GateResult gate = invariance_gate(algebra, xi, gate_tol);
  sc.extra["gate"] = gate.passed ? "pass" : "fail";
  if (!gate.passed) {
    std::ostringstream where;
    where << "offending (s, k) = (" << gate.s + 1 << ", " << gate.k + 1 << ")";
    sc.extra["gate_offending_pair"] = {gate.s + 1, gate.k + 1};
    sc.check_le("invariance_gate", gate.max_residual, gate_tol, where.str());
    return;
  }
  sc.check_le("invariance_gate", gate.max_residual, gate_tol);

  double closed = 0.0;
  double bianchi = 0.0;
  double path_gap = 0.0;
  double deviation = 0.0;
  double min_det = std::numeric_limits<double>::infinity();
  CsvWriter csv(sc.out / "reduction.csv",
                {"potential", "closedness_residual", "contracted_bianchi", "bivector_deviation"});
  sc.artifacts.push_back("reduction.csv");
  for (std::size_t i = 0; i < pots.size(); ++i) {
    const FieldPtr field = field_for(pots[i], perturbation);
    const auto sample = sample_positions(derive_seed(sc.seed, 2000 + i), points, box);
    const ReducedForm form(xi, field, gate_tol);
    double c_i = 0.0;
    double b_i = 0.0;
    for (const Vec3& q : sample) {
      const FormDerivative d = exterior_derivative(form, q);
      const BianchiResidual r = bianchi_residual(*field, pots[i].get(), q);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          for (int c = 0; c < 3; ++c) {
            double contracted = 0.0;
            for (int s = 0; s < algebra.dim(); ++s) contracted += xi.e[s] * r(s, a, b, c);
            c_i = std::max(c_i, std::abs(d[a][b][c]));
            b_i = std::max(b_i, std::abs(contracted));
            path_gap = std::max(path_gap, std::abs(d[a][b][c] - contracted));
          }
        }
      }
      min_det = std::min(min_det, std::abs(form(q).determinant()));
    }
    const double dev = bivector_consistency(xi, field, sample);
    closed = std::max(closed, c_i);
    bianchi = std::max(bianchi, b_i);
    deviation = std::max(deviation, dev);
    csv.row({static_cast<double>(i), c_i, b_i, dev});
  }
  sc.extra["closedness_residual"] = closed;
  sc.extra["contracted_bianchi_residual"] = bianchi;
  sc.extra["bivector_deviation"] = deviation;
  sc.check_le("closedness_residual", closed, sc.tolerance("closedness", 1e-6));
  sc.check_le("closedness_matches_bianchi", path_gap, sc.tolerance("paths", 1e-10));
  sc.check_le("bivector_deviation", deviation, sc.tolerance("bivector", 1e-12));
  sc.check_ge("min_abs_determinant", min_det, sc.tolerance("determinant", 1e-8));
}

Vec3 vec3_or(const Table& t, const std::string& key, const Vec3& fallback) {
  auto v = t.numbers_opt(key);
  if (!v) return fallback;
  if (v->size() != 3) throw ConfigurationError("key '" + key + "' needs 3 entries");
  return Vec3((*v)[0], (*v)[1], (*v)[2]);
}

VecX vecx_or(const Table& t, const std::string& key, int n) {
  auto v = t.numbers_opt(key);
  if (!v) return VecX::Zero(n);
  if (static_cast<int>(v->size()) != n) {
    throw ConfigurationError("key '" + key + "' needs " + std::to_string(n) + " entries");
  }
  return Eigen::Map<const VecX>(v->data(), n);
}

void simulate_particle(Scenario& sc) {
  const Table& t = *sc.config;
  const StructureConstants algebra = algebra_from(t);
  const auto pots = potentials_from(sc, algebra);
  if (pots.size() != 1) throw ConfigurationError("simulate-particle takes exactly one potential");
  const auto perturbation = perturbation_from(t, algebra);
  const BracketKind kind = bracket_kind_from(t, algebra);
  const FieldPtr field = field_for(pots[0], perturbation);
  const BracketSpec spec = bracket_from(kind, t, algebra, pots[0], field);

  const std::string hk = t.string_or("hamiltonian.kind", "free");
  HamiltonianSpec h = HamiltonianSpec::free();
  if (hk == "coupled") {
    h = HamiltonianSpec::coupled(pots[0], t.number_or("hamiltonian.charge", 1.0));
  } else if (hk != "free") {
    throw ConfigurationError("unknown preset '" + hk + "' for key 'hamiltonian.kind'");
  }

  const int n = spec.internal_dim();
  const PhasePoint x0 = n > 0 ? PhasePoint(vec3_or(t, "initial.q", Vec3::Zero()),
                                           vec3_or(t, "initial.p", Vec3::Zero()),
                                           vecx_or(t, "initial.u", n), vecx_or(t, "initial.y", n))
                              : PhasePoint(vec3_or(t, "initial.q", Vec3::Zero()),
                                           vec3_or(t, "initial.p", Vec3::Zero()));
  const Method method = parse_method(t.string_or("integrator.method", "rk4"));
  const double step = t.number("integrator.step");
  const double duration = t.number("integrator.duration");
  const int stride = t.integer_or("output.stride", 1);
  if (stride < 1) throw ConfigurationError("key 'output.stride' must be positive");

  const Trajectory traj = integrate(spec, h, x0, duration, step, method);

  std::vector<std::string> header{"t"};
  for (const auto& name : spec.coordinate_names()) header.push_back(name);
  header.push_back("H");
  for (const auto& name : traj.casimir_names) header.push_back(name);
  {
    CsvWriter csv(sc.out / "trajectory.csv", header);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != traj.size()) continue;
      std::vector<double> row{traj.times[i]};
      const VecX c = traj.states[i].coordinates(spec.active_dim());
      row.insert(row.end(), c.data(), c.data() + c.size());
      row.push_back(traj.energy[i]);
      row.insert(row.end(), traj.casimir_values[i].begin(), traj.casimir_values[i].end());
      csv.row(row);
    }
  }
  sc.artifacts.push_back("trajectory.csv");

  double energy_drift = 0.0;
  for (double e : traj.energy) energy_drift = std::max(energy_drift, std::abs(e - traj.energy[0]));
  sc.extra["bracket"] = to_string(kind);
  sc.extra["hamiltonian"] = hk;
  sc.extra["method"] = to_string(method);
  sc.extra["steps"] = traj.size() - 1;
  sc.extra["step"] = traj.step;
  const VecX last = traj.states.back().coordinates();
  sc.extra["final_state"] = std::vector<double>(last.data(), last.data() + last.size());
  sc.check_le("energy_drift", energy_drift, sc.tolerance("energy", 1e-8));
  for (std::size_t c = 0; c < traj.casimir_names.size(); ++c) {
    double drift = 0.0;
    for (const auto& row : traj.casimir_values) drift = std::max(drift, std::abs(row[c] - traj.casimir_values[0][c]));
    sc.check_le("casimir_drift_" + traj.casimir_names[c], drift, sc.tolerance("casimir", 1e-10));
  }
  if (t.boolean_or("checks.closure", false)) {
    const VecX d = traj.states.back().coordinates() - x0.coordinates();
    sc.check_le("closure_error", d.cwiseAbs().maxCoeff(), sc.tolerance("closure", 1e-6),
                "max |x(T) - x(0)|");
  }
}

FieldState maxwell_initial(const Scenario& sc, const GridSpec& grid) {
  const Table& t = *sc.config;
  const std::string kind = t.string_or("maxwell.initial", "plane-wave");
  if (kind == "plane-wave") return plane_wave(grid, t.number_or("maxwell.amplitude", 1.0));
  if (kind == "beltrami") return beltrami_state(grid);
  if (kind == "zero") return FieldState(grid);
  if (kind == "random-solenoidal") {
    return random_solenoidal_state(grid, sc.require_seed(), t.integer_or("maxwell.modes", 4),
                                   t.integer_or("maxwell.max_wavenumber", 3));
  }
  throw ConfigurationError("unknown preset '" + kind + "' for key 'maxwell.initial'");
}

void simulate_maxwell(Scenario& sc) {
  const Table& t = *sc.config;
  GridSpec grid{t.integer_or("grid.n", 32), t.number_or("grid.length", 2.0 * std::numbers::pi)};
  grid.validate();
  const FieldState initial = maxwell_initial(sc, grid);
  const MaxwellStructure structure = parse_structure(t.string_or("maxwell.structure", "helicity"));
  EvolveOptions opts;
  opts.diagnostic_stride = t.integer_or("output.diagnostic_stride", 1);
  opts.snapshot_stride = t.integer_or("output.snapshot_stride", 0);
  opts.constraint_tolerance = sc.tolerance("constraint", 1e-8);
  const double duration = t.number("integrator.duration");
  const double step = t.number("integrator.step");

  const EvolveResult res = evolve(initial, duration, step, structure, opts);
  {
    CsvWriter csv(sc.out / "diagnostics.csv", {"t", "energy", "helicity", "div_e", "div_b"});
    for (std::size_t i = 0; i < res.times.size(); ++i) {
      csv.row({res.times[i], res.energy[i], res.helicity[i], res.div_e[i], res.div_b[i]});
    }
  }
  sc.artifacts.push_back("diagnostics.csv");
  if (opts.snapshot_stride > 0) {
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
      std::ostringstream stem;
      stem << "snapshot_" << std::setw(5) << std::setfill('0') << i;
      for (auto& f : write_snapshot(sc.out, stem.str(), res.snapshots[i], res.snapshot_times[i])) {
        sc.artifacts.push_back(f);
      }
    }
  } else {
    for (auto& f : write_snapshot(sc.out, "initial", initial, 0.0)) sc.artifacts.push_back(f);
    for (auto& f : write_snapshot(sc.out, "final", res.final_state, duration)) sc.artifacts.push_back(f);
  }

  double e_drift = 0.0;
  double h_drift = 0.0;
  double div_b = 0.0;
  double div_e_drift = 0.0;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    e_drift = std::max(e_drift, std::abs(res.energy[i] - res.energy[0]));
    h_drift = std::max(h_drift, std::abs(res.helicity[i] - res.helicity[0]));
    div_b = std::max(div_b, res.div_b[i]);
    div_e_drift = std::max(div_e_drift, std::abs(res.div_e[i] - res.div_e[0]));
  }
  sc.extra["grid"] = {{"n", grid.n}, {"length", grid.length}};
  sc.extra["structure"] = to_string(structure);
  sc.extra["steps"] = res.steps;
  sc.extra["step"] = res.step;
  sc.check_le("max_div_b", div_b, sc.tolerance("div_b", 1e-12));
  sc.check_le("div_e_drift", div_e_drift, sc.tolerance("div_e", 1e-10));
  sc.check_le("energy_drift", e_drift, sc.tolerance("energy", 1e-10));
  sc.check_le("helicity_drift", h_drift, sc.tolerance("helicity", 1e-9));
  if (t.string_or("maxwell.initial", "plane-wave") == "plane-wave") {
    const FieldState exact = plane_wave_at(grid, duration, t.number_or("maxwell.amplitude", 1.0));
    const double err = std::max((res.final_state.e - exact.e).max_abs(),
                                (res.final_state.b - exact.b).max_abs());
    sc.check_le("state_error", err, sc.tolerance("state", 1e-6), "L-infinity against the travelling wave");
  }
  for (const auto& w : res.warnings) sc.warnings.push_back(w);
}

int finish(Scenario& sc, const Log& log) {
  bool ok = true;
  Json checks = Json::array();
  Json failed = Json::array();
  for (const auto& c : sc.checks) {
    checks.push_back(to_json(c));
    if (!c.passed()) {
      ok = false;
      failed.push_back(c.name);
    }
  }
  Json doc;
  doc["scenario"] = sc.name;
  doc["mode"] = sc.mode;
  if (sc.has_seed) {
    doc["seed"] = sc.seed;
  } else {
    doc["seed"] = nullptr;
  }
  doc["passed"] = ok;
  doc["checks"] = checks;
  doc["failed_checks"] = failed;
  doc["warnings"] = sc.warnings;
  for (auto it = sc.extra.begin(); it != sc.extra.end(); ++it) doc[it.key()] = it.value();
  doc["artifacts"] = sc.artifacts;
  write_json(sc.out / "report.json", doc);
  for (const auto& w : sc.warnings) log.warn(w);
  for (const auto& c : sc.checks) {
    log.info(c.name + " = " + format_double(c.value) + " (" + c.comparison + " " +
             format_double(c.tolerance) + ") " + (c.passed() ? "pass" : "FAIL"));
  }
  return ok ? kPass : kVerificationFailed;
}

}  // namespace

int run_table(const std::string& mode, Table config, const std::string& out_dir,
              std::optional<std::uint64_t> seed, std::ostream& log_stream) {
  const Log log(log_stream);
  try {
    if (config.empty()) throw ConfigurationError("configuration is empty");
    const std::string declared = config.string("run.mode");
    if (std::find(modes().begin(), modes().end(), declared) == modes().end()) {
      throw ConfigurationError("unknown preset '" + declared + "' for key 'run.mode'");
    }
    if (declared != mode) {
      throw ConfigurationError("config declares mode '" + declared + "' but '" + mode + "' was requested");
    }
    Scenario sc;
    sc.mode = mode;
    sc.name = config.string_or("run.name", mode);
    sc.config = &config;
    if (seed) {
      sc.seed = *seed;
      sc.has_seed = true;
      if (config.has("run.seed")) config.seed("run.seed");
    } else if (config.has("run.seed")) {
      sc.seed = config.seed("run.seed");
      sc.has_seed = true;
    }
    config.string_or("run.output", "");
    sc.out = out_dir;
    fs::create_directories(sc.out);
    log.info("running " + mode + " into " + sc.out.string());

    try {
      if (mode == "verify-jacobi") verify_jacobi(sc);
      else if (mode == "verify-bianchi") verify_bianchi(sc);
      else if (mode == "verify-minimal-coupling") verify_minimal_coupling(sc);
      else if (mode == "verify-reduction") verify_reduction(sc);
      else if (mode == "simulate-particle") simulate_particle(sc);
      else simulate_maxwell(sc);
    } catch (const DivergenceError& e) {
      sc.checks.push_back({"integration", static_cast<double>(e.step()), "<=", 0.0, e.what()});
    } catch (const NumericalError& e) {
      sc.checks.push_back({"numerics", 1.0, "<=", 0.0, e.what()});
    } catch (const NotInRangeError& e) {
      sc.checks.push_back({"range", e.defect(), "<=", 0.0, e.what()});
    }

    const auto unused = config.unused();
    if (!unused.empty()) {
      std::string keys;
      for (const auto& k : unused) keys += (keys.empty() ? "" : ", ") + k;
      throw ConfigurationError("unrecognised configuration keys: " + keys);
    }
    return finish(sc, log);
  } catch (const InvarianceError& e) {
    log_stream << "symred: error: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    log_stream << "symred: error: " << e.what() << '\n';
    return kUsageError;
  } catch (const fs::filesystem_error& e) {
    log_stream << "symred: error: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(const RunRequest& request, std::ostream& log) {
  Table config;
  try {
    config = Table::load(request.config_path);
  } catch (const Error& e) {
    log << "symred: error: " << e.what() << '\n';
    return kUsageError;
  }
  std::string out = request.out_dir.value_or("");
  if (out.empty()) {
    try {
      out = config.string_or("run.output", "symred-out");
    } catch (const Error& e) {
      log << "symred: error: " << e.what() << '\n';
      return kUsageError;
    }
  }
  return run_table(request.mode, std::move(config), out, request.seed, log);
}

}  // namespace symred::cli
