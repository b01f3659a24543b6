#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace mfc {

using Rational = mpq_class;
using Exponent = std::vector<int>;

std::string to_string(const Rational& q);

// graded-lex: total degree first, then lexicographic in declared variable order
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class Poly {
 public:
  using Terms = std::map<Exponent, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);
  static Poly monomial(const Exponent& e, const Rational& c);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;

  void add_term(const Exponent& e, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int k) const;
  Poly derivative(int var) const;

  // exact division; returns false when o does not divide *this
  bool divide_exact(const Poly& o, Poly& quotient) const;

  // monomial leading term in grlex
  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  Terms terms_;
};

}  // namespace mfc
