#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/codiagram.hpp"

namespace ctop {

// Cubical hyperresolution: one simplicial complex per nonempty subset alpha of
// {0..n} and, for every alpha in beta with |beta| = |alpha| + 1, a simplicial map
// X_beta -> X_alpha.
struct HyperresolutionDescriptor {
  int n = 0;
  std::map<unsigned, SimplicialComplex> spaces;
  std::map<std::pair<unsigned, unsigned>, SimplicialMap> maps;  // (alpha, beta) -> map X_beta -> X_alpha
  std::optional<SimplicialComplex> target;       // a direct triangulation of X, for comparison
  std::optional<SimplicialComplex> dualComplex;  // isolated-singularity case
  std::vector<std::string> warnings;             // filled by validate()

  void validate();  // throws NotFunctorial; dimension growth is a warning
};

CubicalCodiagram cochainCodiagram(const HyperresolutionDescriptor& h, Ring ring);

struct WeightPages {
  Ring ring = Ring::F2;
  Normalization normalization;
  SpectralSequence ss;
  // (r, s) -> operations; F2 only
  std::map<std::pair<int, int>, std::vector<PageOperation>> steenrod;
  std::map<int, std::size_t> abutment;  // n -> dim H^n(N)
  // Sum_{|alpha| = p+1} dim H^q(X_alpha), independent of the spectral sequence
  std::map<std::pair<int, int>, std::size_t> layerE1;
};

WeightPages weightSS(const HyperresolutionDescriptor& h, Ring ring, bool withSteenrod = true);

// positions where the sequence
//   E2^{p,q}(X) -> E2^{p,q}(Xt) + E2^{p,q}(Y) -> E2^{p,q}(Yt) -> E2^{p+1,q}(X)
// fails to be exact; the first two spots use the maps, the connecting spot
// is checked by dimension (dim coker = dim ker of the next map)
struct ExactnessReport {
  bool exact = true;
  std::vector<std::string> failures;  // "ker/im at (p,q)" style locations
};

struct SquareMaps {
  ChainMap xToXt, xToY, xtToYt, yToYt;  // maps of total complexes, filtered
};

ExactnessReport acyclicSquareCheck(const WeightPages& x, const WeightPages& xt, const WeightPages& y,
                                   const WeightPages& yt, const SquareMaps& maps);

// For a one-step cube X_0 <- X_01 -> X_1: the pages of the cube and of its
// three corners (as one-object cubes) together with the comparison maps.
struct CubeSquare {
  WeightPages x, xt, y, yt;
  SquareMaps maps;
};
CubeSquare squareOfCube(const HyperresolutionDescriptor& h, Ring ring);

struct DualComplexReport {
  std::map<int, std::size_t> e2Row;      // p -> dim E2^{p,0}
  std::map<int, std::size_t> unreduced;  // p -> dim H^p(Sigma D)
  std::map<int, std::size_t> reduced;
  bool matchesUnreduced = false, matchesReduced = false;
};
// F2; throws MissingDualComplex
DualComplexReport dualComplexRow(const HyperresolutionDescriptor& h, const WeightPages& pages);

namespace descriptors {
// X~ = boundary of Delta^3, Y = point, Y~ = two points on X~
HyperresolutionDescriptor nodalCurve();
// genus-two surface with two points identified to a node
HyperresolutionDescriptor nodalGenusTwo();
// projective plane with two points identified
HyperresolutionDescriptor nodalProjectivePlane();
HyperresolutionDescriptor smooth(const SimplicialComplex& k);
HyperresolutionDescriptor disjointSum(const HyperresolutionDescriptor& a, const HyperresolutionDescriptor& b);
}  // namespace descriptors

}  // namespace ctop
