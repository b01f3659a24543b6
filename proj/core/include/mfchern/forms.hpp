#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mfchern/ringmap.hpp"

namespace mfc {

struct FormKey {
  int u = 0;           // power of the formal variable u
  std::uint32_t mask;  // dx_i present iff bit i set; increasing index order
};
struct FormKeyLess {
  bool operator()(const FormKey& a, const FormKey& b) const;
};

int popcount(std::uint32_t m);
// sign of dx_a ^ dx_b reordered to increasing order; 0 when they overlap
int wedge_sign(std::uint32_t a, std::uint32_t b);

// Kähler forms with coefficients in one ring, tensored with Q[u].
class DifferentialForm {
 public:
  using Terms = std::map<FormKey, LocalFrac, FormKeyLess>;

  DifferentialForm() = default;
  explicit DifferentialForm(RingPtr r) : ring_(std::move(r)) {}
  static DifferentialForm scalar(const LocalFrac& f, int u = 0);
  static DifferentialForm dx(RingPtr r, int var);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const FormKey& k, const LocalFrac& c);
  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator-() const;
  DifferentialForm& operator+=(const DifferentialForm& o);
  DifferentialForm operator*(const Rational& c) const;
  DifferentialForm times(const LocalFrac& f) const;
  bool operator==(const DifferentialForm& o) const { return (*this - o).is_zero(); }

  DifferentialForm truncated(int u_trunc) const;
  DifferentialForm shift_u(int k) const;
  DifferentialForm u_slice(int m) const;
  // parity-twisted copy: each term times (-1)^{form degree}
  DifferentialForm parity_twist() const;

  std::string str() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

DifferentialForm de_rham_d(const DifferentialForm& w);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b, int u_trunc = 1 << 20);
DifferentialForm pullback(const RingMap& m, const DifferentialForm& w);

}  // namespace mfc
