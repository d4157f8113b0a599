#include "symred/term_field.hpp"

#include <cmath>

#include "symred/error.hpp"
#include "symred/sampling.hpp"

namespace symred {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

FieldTerm::Kind parse_term_kind(std::string_view name) {
  if (name == "poly" || name == "polynomial") return FieldTerm::Kind::polynomial;
  if (name == "cos" || name == "cosine") return FieldTerm::Kind::cosine;
  if (name == "sin" || name == "sine") return FieldTerm::Kind::sine;
  throw ConfigurationError("unknown term kind '" + std::string(name) + "'");
}

std::string to_string(FieldTerm::Kind kind) {
  switch (kind) {
    case FieldTerm::Kind::polynomial: return "poly";
    case FieldTerm::Kind::cosine: return "cos";
    case FieldTerm::Kind::sine: return "sin";
  }
  return "?";
}

TermField::TermField(int outputs, std::vector<FieldTerm> terms, double wave_scale)
    : outputs_(outputs), terms_(std::move(terms)), wave_scale_(wave_scale) {
  if (outputs <= 0) throw ShapeError("term field needs at least one output");
  for (const auto& t : terms_) {
    if (t.output < 0 || t.output >= outputs_) {
      throw ShapeError("term output index " + std::to_string(t.output) + " out of range");
    }
    if (t.kind == FieldTerm::Kind::polynomial) {
      for (int e : t.exponents) {
        if (e < 0) throw ShapeError("polynomial exponents must be non-negative");
      }
    }
  }
}

VecX TermField::value(const Vec3& q) const {
  VecX out = VecX::Zero(outputs_);
  for (const auto& t : terms_) {
    const auto& e = t.exponents;
    switch (t.kind) {
      case FieldTerm::Kind::polynomial:
        out[t.output] += t.coefficient * ipow(q[0], e[0]) * ipow(q[1], e[1]) * ipow(q[2], e[2]);
        break;
      case FieldTerm::Kind::cosine:
      case FieldTerm::Kind::sine: {
        const double phase = wave_scale_ * (e[0] * q[0] + e[1] * q[1] + e[2] * q[2]);
        out[t.output] += t.coefficient *
                         (t.kind == FieldTerm::Kind::cosine ? std::cos(phase) : std::sin(phase));
        break;
      }
    }
  }
  return out;
}

MatX TermField::gradient(const Vec3& q) const {
  MatX g = MatX::Zero(outputs_, 3);
  for (const auto& t : terms_) {
    const auto& e = t.exponents;
    switch (t.kind) {
      case FieldTerm::Kind::polynomial:
        for (int i = 0; i < 3; ++i) {
          if (e[i] == 0) continue;
          double d = t.coefficient * e[i];
          for (int j = 0; j < 3; ++j) d *= ipow(q[j], j == i ? e[j] - 1 : e[j]);
          g(t.output, i) += d;
        }
        break;
      case FieldTerm::Kind::cosine:
      case FieldTerm::Kind::sine: {
        const double phase = wave_scale_ * (e[0] * q[0] + e[1] * q[1] + e[2] * q[2]);
        const double d = t.kind == FieldTerm::Kind::cosine ? -std::sin(phase) : std::cos(phase);
        for (int i = 0; i < 3; ++i) g(t.output, i) += t.coefficient * d * wave_scale_ * e[i];
        break;
      }
    }
  }
  return g;
}

TermField TermField::operator+(const TermField& other) const {
  if (other.outputs_ != outputs_) throw ShapeError("cannot add term fields of different shapes");
  if (other.wave_scale_ != wave_scale_ && !other.terms_.empty() && !terms_.empty()) {
    throw ShapeError("cannot add term fields with different wave scales");
  }
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return TermField(outputs_, std::move(terms), terms_.empty() ? other.wave_scale_ : wave_scale_);
}

TermField TermField::scaled(double factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient *= factor;
  return TermField(outputs_, std::move(terms), wave_scale_);
}

TermField random_trig_field(int outputs, std::uint64_t seed, int modes, int max_wavenumber,
                            double wave_scale) {
  Rng rng(seed);
  std::vector<FieldTerm> terms;
  terms.reserve(static_cast<std::size_t>(outputs) * modes);
  for (int o = 0; o < outputs; ++o) {
    for (int m = 0; m < modes; ++m) {
      FieldTerm t;
      t.output = o;
      t.kind = rng.integer(0, 1) == 0 ? FieldTerm::Kind::cosine : FieldTerm::Kind::sine;
      for (auto& k : t.exponents) k = rng.integer(-max_wavenumber, max_wavenumber);
      t.coefficient = rng.uniform(-1.0, 1.0);
      terms.push_back(t);
    }
  }
  return TermField(outputs, std::move(terms), wave_scale);
}

}  // namespace symred
