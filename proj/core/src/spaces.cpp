#include "ctop/spaces.hpp"

#include <algorithm>

namespace ctop::spaces {

SimplicialComplex simplex(int n) {
  Simplex all;
  for (int i = 0; i <= n; ++i) all.push_back(i);
  return SimplicialComplex::fromFacets(n + 1, {all});
}

SimplicialComplex sphere(int n) {
  std::vector<Simplex> facets;
  for (int skip = 0; skip <= n + 1; ++skip) {
    Simplex f;
    for (int i = 0; i <= n + 1; ++i)
      if (i != skip) f.push_back(i);
    facets.push_back(f);
  }
  return SimplicialComplex::fromFacets(n + 2, facets);
}

SimplicialComplex hollowTriangle() { return circle(3); }

SimplicialComplex circle(int n) {
  std::vector<Simplex> facets;
  for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  return SimplicialComplex::fromFacets(n, facets);
}

SimplicialComplex torus() {
  std::vector<Simplex> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::fromFacets(7, facets);
}

SimplicialComplex projectivePlane() {
  std::vector<Simplex> facets = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                 {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
  for (auto& f : facets)
    for (auto& v : f) --v;
  return SimplicialComplex::fromFacets(6, facets);
}

SimplicialComplex genusTwo() {
  std::vector<Simplex> a;
  for (int i = 0; i < 7; ++i) {
    a.push_back({i, (i + 1) % 7, (i + 3) % 7});
    a.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  // remove {0,1,3} from both copies and glue along its boundary
  const Simplex hole = {0, 1, 3};
  auto sorted = [](Simplex s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  std::vector<Simplex> facets;
  for (const auto& f : a)
    if (sorted(f) != hole) facets.push_back(f);
  // second copy: 0,1,3 shared; 2,4,5,6 -> 7,8,9,10
  auto relabel = [](int v) {
    switch (v) {
      case 2: return 7;
      case 4: return 8;
      case 5: return 9;
      case 6: return 10;
      default: return v;
    }
  };
  for (const auto& f : a) {
    if (sorted(f) == hole) continue;
    Simplex g;
    for (int v : f) g.push_back(relabel(v));
    facets.push_back(g);
  }
  return SimplicialComplex::fromFacets(11, facets);
}

SimplicialComplex sphereWedgeCircle() {
  std::vector<Simplex> facets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4}, {4, 5}, {0, 5}};
  return SimplicialComplex::fromFacets(6, facets);
}

SimplicialComplex pinchedTorus() {
  // P, circles a0..a2, c0..c2, b0..b2; cylinders a-c and c-b, cones P*a and P*b
  std::vector<std::string> labels = {"P", "a0", "a1", "a2", "c0", "c1", "c2", "b0", "b1", "b2"};
  auto A = [](int i) { return 1 + (i % 3); };
  auto C = [](int i) { return 4 + (i % 3); };
  auto B = [](int i) { return 7 + (i % 3); };
  std::vector<Simplex> facets;
  for (int i = 0; i < 3; ++i) {
    facets.push_back({A(i), A(i + 1), C(i)});
    facets.push_back({A(i + 1), C(i), C(i + 1)});
    facets.push_back({C(i), C(i + 1), B(i)});
    facets.push_back({C(i + 1), B(i), B(i + 1)});
    facets.push_back({0, A(i), A(i + 1)});
    facets.push_back({0, B(i), B(i + 1)});
  }
  return SimplicialComplex::fromFacets(std::move(labels), facets);
}

SimplicialComplex point() { return SimplicialComplex::fromFacets(1, {{0}}); }

}  // namespace ctop::spaces
