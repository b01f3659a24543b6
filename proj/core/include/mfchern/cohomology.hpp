#pragma once

#include <memory>
#include <vector>

#include "mfchern/cech.hpp"
#include "mfchern/linsolve.hpp"

namespace mfc {

// d_Čech - dw + ud on a scalar cochain; dw is wedged from the left
CechCochain total_differential(const CechCochain& c);
bool is_cocycle(const CechCochain& c);

// total degree p - q + 2m of every term (mod 2 under ℤ/2 grading); throws when mixed
// or when c is zero
int homogeneous_degree(const CechCochain& c);

struct ClassComparison {
  SolveStatus status = SolveStatus::NoneWithinBound;
  CechCochain primitive;  // D(primitive) = c1 - c2 when Solved
};

// look for p with total_differential(p) = c1 - c2, coefficients Laurent of |e|_1 <= bound
ClassComparison cohomologous(const CechCochain& c1, const CechCochain& c2, int degree_bound);

// per group element g, a scalar cochain on the fixed locus X^g
struct EquivariantFamily {
  std::shared_ptr<const GroupAction> G;
  std::shared_ptr<const CoveredScheme> X;
  std::vector<std::shared_ptr<const FixedLocus>> loci;
  std::vector<CechCochain> comp;

  std::shared_ptr<const CoveredScheme> locus_scheme(int g) const {
    return std::shared_ptr<const CoveredScheme>(loci.at(g), &loci.at(g)->scheme);
  }
  bool operator==(const EquivariantFamily& o) const;
  std::string str() const;
};

EquivariantFamily make_family(std::shared_ptr<const GroupAction> G, std::shared_ptr<const CoveredScheme> X);
// the value of component h^{-1} g h moved onto X^g along the action of h
CechCochain conjugate_component(const EquivariantFamily& f, int h, int g);
// c_g ↦ (1/|G|) Σ_h h·c_{h^{-1} g h}
EquivariantFamily coinvariant_project(const EquivariantFamily& f);

}  // namespace mfc
