// Regenerates the data/ corpus: ctop_corpus <dir>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "ctop/spaces.hpp"
#include "ctop/stratified.hpp"
#include "ctop/weight.hpp"

using namespace ctop;
using cli::Json;

namespace {

void put(const std::filesystem::path& dir, const std::string& name, const Json& j) {
  std::ofstream(dir / name) << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  put(dir, "rp2.json", cli::complexToJson(spaces::projectivePlane()));
  put(dir, "torus.json", cli::complexToJson(spaces::torus()));
  put(dir, "sphere2.json", cli::complexToJson(spaces::sphere(2)));
  put(dir, "genus2.json", cli::complexToJson(spaces::genusTwo()));
  put(dir, "nodal_curve.json", cli::descriptorToJson(descriptors::nodalCurve()));
  put(dir, "nodal_genus2.json", cli::descriptorToJson(descriptors::nodalGenusTwo()));
  put(dir, "pinched_torus.json", cli::stratifiedToJson(spaces::pinchedTorusStratified()));
  put(dir, "suspended_torus.json", cli::stratifiedToJson(spaces::suspendedTorus()));

  // torus filtered by vertex index: 0..2 at level 0, 3..4 at 1, 5..6 at 2
  Json f = cli::complexToJson(spaces::torus());
  f["levels"] = Json::object();
  const auto labels = spaces::torus().labels();
  for (std::size_t i = 0; i < labels.size(); ++i) f["levels"][labels[i]] = i < 3 ? 0 : i < 5 ? 1 : 2;
  put(dir, "torus_filtered.json", f);

  put(dir, "perversity.json", Json{{"n", 4}, {"values", {0, 1, 1}}});
  return 0;
}
