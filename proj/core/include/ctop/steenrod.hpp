#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctop/complex.hpp"
#include "ctop/simplicial.hpp"

namespace ctop {

// Generators of the arity-2 Barratt-Eccles component: e_i and tau_i = (12) e_i.
struct E2Word {
  enum Kind { e, tau } kind = e;
  int i = 0;
  bool operator==(const E2Word&) const = default;
};

// d e_i = d tau_i = e_{i-1} + tau_{i-1}; empty for i = 0
std::vector<E2Word> differential(E2Word w);

class CupIAlgebra {
 public:
  // theta(e_i, a, b) for a in degree p, b in degree q; result in degree p+q-i
  using Evaluator = std::function<Vec(int i, int p, const Vec& a, int q, const Vec& b)>;

  CupIAlgebra() = default;
  CupIAlgebra(CochainComplex c, Evaluator e);

  const CochainComplex& complex() const { return c_; }
  Vec theta(E2Word w, int p, const Vec& a, int q, const Vec& b) const;
  Vec cupI(int i, int p, const Vec& a, int q, const Vec& b) const;
  explicit operator bool() const { return static_cast<bool>(eval_); }

 private:
  CochainComplex c_;
  Evaluator eval_;
};

CupIAlgebra simplicialCupIAlgebra(const SimplicialComplex& k);

struct NiceReport {
  bool idempotent = true;  // a cup_i a = a on A^i
  bool vanishing = true;   // a cup_i b = 0 for i > min(|a|,|b|)
  int witnessDegreeA = 0, witnessDegreeB = 0, witnessI = 0;
  std::optional<Vec> witnessA, witnessB;
  std::string detail;
  bool nice() const { return idempotent && vanishing; }
};

// Exhaustive by polarization (both conditions are determined by basis pairs),
// plus `samples` random checks of the quadratic identity.
NiceReport checkNice(const CupIAlgebra& a, int samples = 0, unsigned seed = 1);

// P^s(a) = da cup_{k-s+1} a + a cup_{k-s} a, in degree k+s
Vec psCochain(const CupIAlgebra& alg, int k, const Vec& a, int s);

// Sq^s of the class of a cocycle of degree k, as coordinates in H^{k+s}
Vec sq(const CupIAlgebra& alg, const Cohomology& h, int k, const Vec& cocycle, int s);
// matrix of Sq^s: H^k -> H^{k+s} on the chosen bases
Matrix sqMatrix(const CupIAlgebra& alg, const Cohomology& h, int k, int s);

}  // namespace ctop
