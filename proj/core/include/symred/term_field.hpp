#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symred/types.hpp"

namespace symred {

// One additive term of a multi-output field on R^3.
//
//   polynomial: coefficient * q1^a q2^b q3^c          (exponents = (a,b,c))
//   cosine:     coefficient * cos(scale * k.q)         (exponents = k)
//   sine:       coefficient * sin(scale * k.q)
struct FieldTerm {
  enum class Kind { polynomial, cosine, sine };

  int output = 0;
  Kind kind = Kind::polynomial;
  double coefficient = 0.0;
  std::array<int, 3> exponents{0, 0, 0};
};

FieldTerm::Kind parse_term_kind(std::string_view name);
std::string to_string(FieldTerm::Kind kind);

// Sum of polynomial and trigonometric terms with closed-form gradient. This is
// the coefficient-table representation behind every built-in potential and
// free-standing curvature.
class TermField {
 public:
  TermField(int outputs, std::vector<FieldTerm> terms, double wave_scale = 1.0);

  int outputs() const { return outputs_; }
  double wave_scale() const { return wave_scale_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }

  VecX value(const Vec3& q) const;
  // Row o holds d(output o)/dq^i in column i.
  MatX gradient(const Vec3& q) const;

  TermField operator+(const TermField& other) const;
  TermField scaled(double factor) const;

 private:
  int outputs_;
  std::vector<FieldTerm> terms_;
  double wave_scale_;
};

// Seeded trigonometric polynomial: `modes` terms per output, each a cosine or
// sine with integer wave vector in [-max_wavenumber, max_wavenumber]^3 and
// coefficient uniform in [-1, 1].
TermField random_trig_field(int outputs, std::uint64_t seed, int modes = 4,
                            int max_wavenumber = 3, double wave_scale = 1.0);

}  // namespace symred
