#pragma once

#include <memory>

#include "mfchern/connection.hpp"

namespace mfc {


// one patch with the given variables and potential (ℤ/2 graded unless w = 0 and z_graded)
SchemePtr affine_space(std::vector<std::string> vars, const Poly& w, bool z_graded = false);
// 𝔸¹ covered by U0 = 𝔸¹ and U1 = 𝔸¹ ∖ 0, potential x²
SchemePtr punctured_line_cover(const Poly& w);
// ℙ¹ with charts z and t = 1/z, w = 0, ℤ-graded
SchemePtr projective_line();

// O(n) on projective_line(): g_01 = z^n
BundlePtr line_bundle_p1(SchemePtr X, int n);

// C = n·z dz on U0 (z dz when n = 0), zero on U1: a second connection on O(n)
Connection p1_alt_connection(BundlePtr E, int n);

}  // namespace mfc
