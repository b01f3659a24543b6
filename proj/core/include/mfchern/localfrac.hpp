#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mfchern/poly.hpp"

namespace mfc {

// Polynomial ring over Q localized at finitely many declared generators.
struct Ring {
  std::string name;
  std::vector<std::string> vars;
  std::vector<Poly> gens;

  int nvars() const { return static_cast<int>(vars.size()); }
  // every generator is a bare variable, so the ring has a Laurent monomial basis
  bool laurent() const;
  int gen_variable(int k) const;  // variable index of a bare-variable generator, else -1
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::string name, std::vector<std::string> vars, std::vector<Poly> gens = {});
bool same_ring(const RingPtr& a, const RingPtr& b);

using Laurent = std::map<Exponent, Rational, GrlexLess>;

class LocalFrac {
 public:
  LocalFrac() = default;
  explicit LocalFrac(RingPtr r);
  LocalFrac(RingPtr r, Poly num);
  LocalFrac(RingPtr r, Poly num, std::vector<int> den);
  static LocalFrac constant(RingPtr r, const Rational& c);
  static LocalFrac variable(RingPtr r, int index);
  static LocalFrac from_laurent(RingPtr r, const Laurent& l);

  const RingPtr& ring() const { return ring_; }
  const Poly& num() const { return num_; }
  const std::vector<int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()

  LocalFrac operator+(const LocalFrac& o) const;
  LocalFrac operator-(const LocalFrac& o) const;
  LocalFrac operator-() const;
  LocalFrac operator*(const LocalFrac& o) const;
  LocalFrac operator*(const Rational& c) const;
  LocalFrac& operator+=(const LocalFrac& o);
  bool operator==(const LocalFrac& o) const;
  bool operator!=(const LocalFrac& o) const { return !(*this == o); }

  LocalFrac derivative(int var) const;
  // inverse of a unit: constant times a product of generators
  bool invert_unit(LocalFrac& out) const;

  Laurent laurent() const;  // requires ring()->laurent()
  std::string str() const;

 private:
  void canonicalize();
  RingPtr ring_;
  Poly num_;
  std::vector<int> den_;
};

}  // namespace mfc
