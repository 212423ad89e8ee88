#pragma once

#include "ctop/simplicial.hpp"

// Small triangulations used by tests, examples and the CLI corpus.
namespace ctop::spaces {

SimplicialComplex simplex(int n);          // full Delta^n
SimplicialComplex sphere(int n);           // boundary of Delta^{n+1}
SimplicialComplex hollowTriangle();        // S^1 on three vertices
SimplicialComplex circle(int n);           // n-gon, n >= 3
SimplicialComplex torus();                 // 7-vertex torus
SimplicialComplex projectivePlane();       // 6-vertex RP^2
SimplicialComplex genusTwo();              // connected sum of two 7-vertex tori, 11 vertices
SimplicialComplex sphereWedgeCircle();     // boundary of Delta^3 with a triangle loop at vertex 0
SimplicialComplex pinchedTorus();          // sphere with two points identified; vertex "P" is the pinch
SimplicialComplex point();

}  // namespace ctop::spaces
