#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfchern/ringmap.hpp"

namespace mfc {

enum class Grading { Z, Z2 };
using Tuple = std::vector<int>;

struct PatchSpec {
  std::string name;
  std::vector<std::string> vars;
  std::vector<Poly> denominators;  // in the patch's own variables
};

// Patch j's variables written as fractions in patch i's variables, i < j.
struct GluingSpec {
  int i = 0, j = 0;
  std::vector<Poly> denominators;  // inverted on U_ij, in patch i variables
  std::vector<std::pair<Poly, std::vector<int>>> images;  // numerator and exponent over `denominators`
};

struct SchemeSpec {
  Grading grading = Grading::Z2;
  int dimension = 0;
  std::vector<PatchSpec> patches;
  std::vector<GluingSpec> gluings;
  std::vector<Poly> potential;  // one per patch
  bool star_condition = false;  // user-asserted, not checked
  int covering_check_bound = 0;  // 0 disables the covering check
};

class CoveredScheme {
 public:
  static CoveredScheme build(const SchemeSpec& spec);

  Grading grading() const { return grading_; }
  int dimension() const { return dimension_; }
  int num_patches() const { return static_cast<int>(patch_rings_.size()); }
  bool star_condition() const { return star_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string& patch_name(int i) const { return names_.at(i); }

  bool has_tuple(const Tuple& t) const { return rings_.count(t) > 0; }
  // increasing tuples with nonempty declared intersection, of length p+1
  const std::vector<Tuple>& tuples(int p) const;
  int max_cech_degree() const { return static_cast<int>(by_degree_.size()) - 1; }

  const RingPtr& ring(const Tuple& t) const;
  const RingMap& restriction(const Tuple& from, const Tuple& to) const;
  LocalFrac potential(const Tuple& t) const;

  // patchwise presentation data for a derived scheme (fixed loci)
  static CoveredScheme from_parts(Grading g, int dim, std::vector<std::string> names, std::map<Tuple, RingPtr> rings,
                                  std::map<std::pair<Tuple, Tuple>, RingMap> restr, std::vector<LocalFrac> potential);

 private:
  void index_tuples();
  Grading grading_ = Grading::Z2;
  int dimension_ = 0;
  bool star_ = false;
  std::vector<std::string> names_;
  std::vector<RingPtr> patch_rings_;
  std::map<Tuple, RingPtr> rings_;
  std::map<std::pair<Tuple, Tuple>, RingMap> restr_;
  std::vector<LocalFrac> potential_;
  std::vector<std::vector<Tuple>> by_degree_;
  std::vector<std::string> warnings_;
};

using SchemePtr = std::shared_ptr<const CoveredScheme>;

bool is_subtuple(const Tuple& small, const Tuple& big);
std::string tuple_str(const Tuple& t);

// Finite group by multiplication table; element 0 is the identity.
struct GroupAction {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  // matrices[g][patch]: linear substitution x -> M x of the patch variables,
  // the pullback (g^{-1})^* on functions
  std::vector<std::vector<std::vector<std::vector<Rational>>>> matrices;

  int order() const { return static_cast<int>(table.size()); }
  int mul(int g, int h) const { return table.at(g).at(h); }
  int inverse(int g) const;
  RingMap action_map(const CoveredScheme& X, int g, const Tuple& t) const;
  void validate(const CoveredScheme& X) const;
};

struct FixedLocus {
  int element = 0;
  std::vector<int> patches;  // patches of X meeting X^g, in order
  CoveredScheme scheme;      // presentation of X^g on the induced cover
  // restriction from X's tuple ring to the fixed locus tuple ring, keyed by X tuples
  std::map<Tuple, RingMap> restrict_map;
  std::map<Tuple, Tuple> tuple_map;  // X tuple -> fixed-locus tuple
};

FixedLocus fixed_locus(const CoveredScheme& X, const GroupAction& G, int g);

}  // namespace mfc
