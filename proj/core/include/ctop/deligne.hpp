#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/perverse.hpp"
#include "ctop/sheaf.hpp"
#include "ctop/stratified.hpp"

namespace ctop {

struct DeligneOptions {
  bool truncate = true;
  // raise the truncation index at one stage k by `by` (a deliberate mutation)
  std::optional<int> bumpStage;
  int by = 1;
};

// The Deligne tower for every perversity at once. The ambient is the
// untruncated iterated pushforward of the constant sheaf on X - X_{n-2}
// (the infinite perversity); a finite perversity is a subsheaf of it,
// truncated stagewise inside the ambient stalks.
class DeligneIC {
 public:
  DeligneIC() = default;
  DeligneIC(const StratifiedComplex& x, Ring ring, DeligneOptions opt = {});

  const StratifiedComplex& space() const { return x_; }
  Ring ring() const { return ring_; }
  const PosetSheaf& ambient() const { return ambient_; }
  // stalkwise subspaces of the ambient
  const std::vector<std::map<int, Subspace>>& levelSpaces(const Perversity& p) const;
  PosetSheaf sheaf(const Perversity& p) const;
  // stages where U_k = U_{k+1} had no pushforward (truncation still applied)
  const std::vector<int>& skippedStages() const { return skipped_; }

  // global sections: the face-cellular normalization of the ambient, and the
  // level subcomplexes inside it
  const Normalization& ambientSections() const { return sections_; }
  const Subcomplex& sections(const Perversity& p) const;
  const Cohomology& cohomology(const Perversity& p) const;
  std::map<int, std::size_t> ih(const Perversity& p) const;
  // the transition IC_p -> IC_q for p <= q, on global sections
  ChainMap transition(const Perversity& p, const Perversity& q) const;

 private:
  const Perversity& key(const Perversity& p) const;
  StratifiedComplex x_;
  Ring ring_ = Ring::F2;
  PosetSheaf ambient_;
  std::vector<Perversity> perv_;
  std::map<std::string, std::vector<std::map<int, Subspace>>> levels_;
  std::vector<int> skipped_;
  Normalization sections_;
  mutable std::map<std::string, Subcomplex> global_;
  mutable std::map<std::string, Cohomology> h_;
};

struct AxiomFailure {
  std::string axiom;  // AX0 .. AX3
  std::string face;
  int degree = 0;
  std::string detail;
};

struct AxiomReport {
  bool skipped = false;  // the infinite perversity has no axioms to check
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
};

// a is a complex of sheaves on the whole of X
AxiomReport checkAxioms(const StratifiedComplex& x, const Perversity& p, const PosetSheaf& a);

struct IHSquare {
  Perversity target;          // L(p, s)
  bool inTarget = true;       // P^s(x) lies in the target level
  std::optional<Vec> classVec;  // coordinates in IH^{k+s} at the target level
  std::string detail;
};

// Sq^s on IH^k_p: P^s of a cocycle of the level-p sections, read in level L(p, s); F2 only
IHSquare ihSteenrod(const DeligneIC& ic, const Perversity& p, int k, const Vec& x, int s);
// the whole matrix on the IH bases
Matrix ihSteenrodMatrix(const DeligneIC& ic, const Perversity& p, int k, int s);

}  // namespace ctop
