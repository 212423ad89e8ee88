#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "ctop/deligne.hpp"
#include "ctop/parallel.hpp"
#include "ctop/spectral.hpp"
#include "ctop/steenrod.hpp"

namespace ctop::cli {

namespace {

Error schemaError(const std::string& msg, const std::string& ptr) { return Error(ErrorKind::SchemaError, msg, ptr); }

std::string label(const Json& v, const std::string& ptr) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw schemaError("vertex labels are strings or integers", ptr);
}

const Json& need(const Json& j, const char* key, const std::string& ptr) {
  if (!j.is_object()) throw schemaError("expected an object", ptr.empty() ? "/" : ptr);
  auto it = j.find(key);
  if (it == j.end()) throw schemaError(std::string("missing key '") + key + "'", ptr + "/" + key);
  return *it;
}

std::vector<std::vector<std::string>> parseFacets(const Json& f, const std::string& ptr,
                                                  const std::set<std::string>& known) {
  if (!f.is_array()) throw schemaError("facets must be an array", ptr);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::string pi = ptr + "/" + std::to_string(i);
    if (!f[i].is_array() || f[i].empty()) throw schemaError("a facet is a nonempty array of vertices", pi);
    std::vector<std::string> face;
    std::set<std::string> seen;
    for (std::size_t j = 0; j < f[i].size(); ++j) {
      std::string pj = pi + "/" + std::to_string(j);
      auto l = label(f[i][j], pj);
      if (!known.count(l)) throw Error(ErrorKind::SchemaError, "facet references unknown vertex '" + l + "'", pj);
      if (!seen.insert(l).second) throw schemaError("repeated vertex in a facet", pj);
      face.push_back(l);
    }
    out.push_back(std::move(face));
  }
  return out;
}

std::string matrixString(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "-";
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    s += m.row(i).str();
  }
  return s;
}

std::string dimsRow(const std::map<int, std::size_t>& d) { return dimsString(d); }

Ring ringOf(const std::string& s) {
  try {
    return parseRing(s);
  } catch (const Error&) {
    throw Error(ErrorKind::SchemaError, "ring must be F2 or Q", "--ring");
  }
}

std::pair<int, int> parseRange(const std::string& s, const std::string& opt) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::SchemaError, "expected an integer or a range a..b", opt);
  }
}

Json loadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read input file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON", "byte " + std::to_string(e.byte));
  }
}

// F^p = cochains on simplices whose largest vertex level is >= p
FilteredComplex vertexLevelFiltration(const SimplicialComplex& k, const std::map<std::string, int>& level, Ring ring) {
  auto c = cochains(k, ring);
  auto lv = [&](const Simplex& s) {
    int m = std::numeric_limits<int>::min();
    for (int v : s) {
      auto it = level.find(k.labels()[v]);
      m = std::max(m, it == level.end() ? 0 : it->second);
    }
    return m;
  };
  int lo = 0, hi = 0;
  bool first = true;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& s : k.simplices(d)) {
      int l = lv(s);
      lo = first ? l : std::min(lo, l);
      hi = first ? l : std::max(hi, l);
      first = false;
    }
  std::map<int, std::map<int, std::vector<Vec>>> levels;
  for (int p = lo; p <= hi; ++p) {
    auto& w = levels[-p];
    for (int d = 0; d <= k.dimension(); ++d) {
      auto& gens = w[d];
      const auto& ss = k.simplices(d);
      for (std::size_t i = 0; i < ss.size(); ++i)
        if (lv(ss[i]) >= p) gens.push_back(Vec::unit(ring, ss.size(), i));
    }
  }
  return FilteredComplex::make(c, levels);
}

std::map<std::string, int> parseLevels(const Json& j, const SimplicialComplex& k) {
  std::map<std::string, int> out;
  auto it = j.find("levels");
  if (it == j.end()) return out;
  if (!it->is_object()) throw schemaError("levels maps vertex labels to integers", "/levels");
  for (const auto& [key, v] : it->items()) {
    if (k.vertexIndex(key) < 0) throw schemaError("level for an unknown vertex '" + key + "'", "/levels/" + key);
    if (!v.is_number_integer()) throw schemaError("levels are integers", "/levels/" + key);
    out[key] = v.get<int>();
  }
  return out;
}

// ---------------------------------------------------------------- commands

struct Options {
  std::string input;
  std::string ring = "F2";
  std::string format;
  std::string output;
  int threads = 1;
  std::string s;
  std::string pages = "1..3";
  bool steenrod = false;
  std::string perversity = "all";
  std::string method = "chains";
  std::string mutation = "none";
  std::string kind = "auto";
  int n = 0;
  std::string p, q;
};

std::vector<Perversity> selectPerversities(const std::string& which, int n) {
  if (which == "all") return enumeratePerversities(std::max(n, 2));
  return {parsePerversity(which, std::max(n, 2))};
}

Report cohomologyCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto k = parseComplex(loadJson(o.input));
  Report r{"cohomology", {{"ring", ringName(ring)}, {"euler", std::to_string(k.euler())}}, {}};
  Table t{"cohomology", {"degree", "dim"}, {}};
  Cohomology h(cochains(k, ring));
  for (int d = 0; d <= k.dimension(); ++d) t.rows.push_back({std::to_string(d), std::to_string(h.dim(d))});
  r.tables.push_back(std::move(t));
  return r;
}

Report steenrodCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  if (ring != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "Steenrod squares need F2", "--ring");
  auto k = parseComplex(loadJson(o.input));
  auto [s0, s1] = o.s.empty() ? std::pair<int, int>{0, k.dimension()} : parseRange(o.s, "--s");
  if (s0 < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative square", "--s");
  auto alg = simplicialCupIAlgebra(k);
  Cohomology h(alg.complex());
  Report r{"steenrod", {{"ring", "F2"}}, {}};
  Table t{"steenrod", {"s", "degree", "target", "rank", "matrix"}, {}};
  for (int s = s0; s <= s1; ++s)
    for (int d = 0; d <= k.dimension(); ++d) {
      auto m = sqMatrix(alg, h, d, s);
      t.rows.push_back({std::to_string(s), std::to_string(d), std::to_string(d + s), std::to_string(rank(m)),
                        matrixString(m)});
    }
  r.tables.push_back(std::move(t));
  return r;
}

void pageTables(Report& r, const SpectralSequence& ss, std::pair<int, int> pages) {
  Table e{"pages", {"r", "p", "q", "dim"}, {}};
  Table d{"differentials", {"r", "p", "q", "rank"}, {}};
  auto support = ss.support();
  for (int page = pages.first; page <= pages.second; ++page)
    for (auto [p, q] : support) {
      if (auto dim = ss.dim(page, p, q)) e.rows.push_back({std::to_string(page), std::to_string(p), std::to_string(q), std::to_string(dim)});
      if (page >= 1) {
        auto rk = rank(ss.d(page, p, q));
        if (rk) d.rows.push_back({std::to_string(page), std::to_string(p), std::to_string(q), std::to_string(rk)});
      }
    }
  for (auto [p, q] : support)
    if (auto dim = ss.dimInfinity(p, q)) e.rows.push_back({"inf", std::to_string(p), std::to_string(q), std::to_string(dim)});
  r.meta.emplace_back("stable_at", std::to_string(ss.stableAt()));
  r.tables.push_back(std::move(e));
  r.tables.push_back(std::move(d));
}

Report spectralCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto j = loadJson(o.input);
  auto k = parseComplex(j);
  auto fc = vertexLevelFiltration(k, parseLevels(j, k), ring);
  SpectralSequence ss(fc);
  Report r{"spectral", {{"ring", ringName(ring)}}, {}};
  auto pages = parseRange(o.pages, "--pages");
  if (pages.first < 0 || pages.second < pages.first) throw Error(ErrorKind::SchemaError, "bad page range", "--pages");
  pageTables(r, ss, pages);
  Table a{"abutment", {"degree", "dim"}, {}};
  Cohomology h(fc.complex());
  for (int d = 0; d <= k.dimension(); ++d) a.rows.push_back({std::to_string(d), std::to_string(h.dim(d))});
  r.tables.push_back(std::move(a));
  return r;
}

Report weightCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto h = parseDescriptor(loadJson(o.input));
  bool sq = o.steenrod;
  if (sq && ring != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "page Steenrod squares need F2", "--steenrod");
  auto w = weightSS(h, ring, sq);
  Report r{"weight", {{"ring", ringName(ring)}, {"cube_arity", std::to_string(h.n)}}, {}};
  auto pages = parseRange(o.pages, "--pages");
  if (pages.first < 0 || pages.second < pages.first) throw Error(ErrorKind::SchemaError, "bad page range", "--pages");
  pageTables(r, w.ss, pages);
  Table a{"abutment", {"degree", "dim"}, {}};
  for (auto [n, d] : w.abutment) a.rows.push_back({std::to_string(n), std::to_string(d)});
  r.tables.push_back(std::move(a));
  Table l{"layers", {"p", "q", "dim"}, {}};
  for (auto [pq, d] : w.layerE1) l.rows.push_back({std::to_string(pq.first), std::to_string(pq.second), std::to_string(d)});
  r.tables.push_back(std::move(l));
  if (h.target) {
    Table t{"target", {"degree", "dim"}, {}};
    Cohomology ht(cochains(*h.target, ring));
    for (int d = 0; d <= h.target->dimension(); ++d) t.rows.push_back({std::to_string(d), std::to_string(ht.dim(d))});
    r.tables.push_back(std::move(t));
  }
  if (sq) {
    Table t{"operations", {"r", "s", "p", "q", "tp", "tq", "matrix", "columns", "out_of_range_zero"}, {}};
    for (const auto& [rs, ops] : w.steenrod)
      for (const auto& op : ops) {
        if (rs.first < pages.first || rs.first > pages.second) continue;
        std::string cols;
        for (int c : op.columns) cols += (cols.empty() ? "" : ",") + std::to_string(c);
        t.rows.push_back({std::to_string(op.r), std::to_string(op.s), std::to_string(op.p), std::to_string(op.q),
                          std::to_string(op.tp), std::to_string(op.tq), matrixString(op.matrix), cols.empty() ? "-" : cols,
                          op.outOfRangeZero ? "yes" : "no"});
      }
    r.tables.push_back(std::move(t));
  }
  if (h.dualComplex && ring == Ring::F2) {
    auto dc = dualComplexRow(h, w);
    Table t{"dual_complex", {"p", "e2", "unreduced", "reduced"}, {}};
    std::set<int> ps;
    for (const auto* m : {&dc.e2Row, &dc.unreduced, &dc.reduced})
      for (auto [p, d] : *m) ps.insert(p);
    auto get = [](const std::map<int, std::size_t>& m, int p) {
      auto it = m.find(p);
      return std::to_string(it == m.end() ? 0 : it->second);
    };
    for (int p : ps) t.rows.push_back({std::to_string(p), get(dc.e2Row, p), get(dc.unreduced, p), get(dc.reduced, p)});
    r.meta.emplace_back("dual_matches",
                        dc.matchesUnreduced && dc.matchesReduced ? "both"
                        : dc.matchesUnreduced                    ? "unreduced"
                        : dc.matchesReduced                      ? "reduced"
                                                                 : "none");
    r.tables.push_back(std::move(t));
  }
  if (!h.warnings.empty()) {
    HyperresolutionDescriptor hv = h;
    hv.validate();
    Table t{"warnings", {"warning"}, {}};
    for (const auto& s : hv.warnings) t.rows.push_back({s});
    r.tables.push_back(std::move(t));
  }
  return r;
}

Report ihCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto x = parseStratified(loadJson(o.input));
  auto ps = selectPerversities(o.perversity, x.dimension());
  if (o.method != "chains" && o.method != "sheaf" && o.method != "both")
    throw Error(ErrorKind::SchemaError, "method is chains, sheaf or both", "--method");
  Report r{"ih", {{"ring", ringName(ring)}, {"dimension", std::to_string(x.dimension())},
                  {"indexing", "chains: homological degree; sheaf: cohomological degree"}}, {}};
  Table t{"ih", {"method", "perversity", "degree", "dim"}, {}};
  auto emit = [&](const std::string& m, const Perversity& p, const std::map<int, std::size_t>& d) {
    for (int i = 0; i <= x.dimension(); ++i) {
      auto it = d.find(i);
      t.rows.push_back({m, p.str(), std::to_string(i), std::to_string(it == d.end() ? 0 : it->second)});
    }
  };
  if (o.method != "sheaf")
    for (const auto& p : ps) emit("chains", p, intersectionHomology(x, p, ring));
  if (o.method != "chains") {
    DeligneIC ic(x, ring);
    for (const auto& p : ps) emit("sheaf", p, ic.ih(p));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report deligneCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto x = parseStratified(loadJson(o.input));
  auto ps = selectPerversities(o.perversity, x.dimension());
  if (o.steenrod && ring != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "IH squares need F2", "--steenrod");
  DeligneIC ic(x, ring);
  Report r{"deligne", {{"ring", ringName(ring)}, {"dimension", std::to_string(x.dimension())}}, {}};
  Table st{"stages", {"stage", "pushforward"}, {}};
  const auto& skipped = ic.skippedStages();
  for (int k = 2; k <= x.dimension(); ++k)
    st.rows.push_back({std::to_string(k), std::find(skipped.begin(), skipped.end(), k) == skipped.end() ? "yes" : "skipped"});
  r.tables.push_back(std::move(st));
  Table stalks{"singular_stalks", {"perversity", "face", "degree", "dim"}, {}};
  Table ih{"ih", {"perversity", "degree", "dim"}, {}};
  Table sq{"squares", {"perversity", "degree", "s", "target", "matrix"}, {}};
  for (const auto& p : ps) {
    auto sh = ic.sheaf(p);
    for (std::size_t c = 0; c < sh.cellCount(); ++c) {
      if (!x.inSkeleton(2, sh.cell(c))) continue;
      for (auto [deg, d] : Cohomology(sh.stalk(c)).dims())
        if (d) stalks.rows.push_back({p.str(), sh.cellName(c), std::to_string(deg), std::to_string(d)});
    }
    auto h = ic.ih(p);
    for (int i = 0; i <= x.dimension(); ++i) {
      auto it = h.find(i);
      ih.rows.push_back({p.str(), std::to_string(i), std::to_string(it == h.end() ? 0 : it->second)});
    }
    if (o.steenrod) {
      auto [s0, s1] = o.s.empty() ? std::pair<int, int>{0, x.dimension()} : parseRange(o.s, "--s");
      for (int k = 0; k <= x.dimension(); ++k)
        for (int s = s0; s <= s1; ++s) {
          Perversity t = p.isInfinite() ? p : lPerversity(p, s);
          sq.rows.push_back({p.str(), std::to_string(k), std::to_string(s), t.str(), matrixString(ihSteenrodMatrix(ic, p, k, s))});
        }
    }
  }
  r.tables.push_back(std::move(stalks));
  r.tables.push_back(std::move(ih));
  if (o.steenrod) {
    r.meta.emplace_back("l_clipping", "smallest dominating perversity, inf when none");
    r.tables.push_back(std::move(sq));
  }
  return r;
}

Report axiomsCmd(const Options& o) {
  Ring ring = ringOf(o.ring);
  auto x = parseStratified(loadJson(o.input));
  auto ps = selectPerversities(o.perversity, x.dimension());
  Report r{"check-axioms", {{"ring", ringName(ring)}, {"mutation", o.mutation}}, {}};
  DeligneOptions opt;
  std::optional<PosetSheaf> fixed;
  if (o.mutation == "untruncated") {
    opt.truncate = false;
  } else if (o.mutation.rfind("bump:", 0) == 0) {
    try {
      opt.bumpStage = std::stoi(o.mutation.substr(5));
    } catch (const std::exception&) {
      throw Error(ErrorKind::SchemaError, "bump needs a stage number", "--mutation");
    }
  } else if (o.mutation == "constant") {
    fixed = constantSheaf(x.complex(), ring);
  } else if (o.mutation == "zero") {
    PosetSheaf z(x.complex(), ring);
    for (std::size_t c = 0; c < z.cellCount(); ++c)
      for (auto f : z.facesOf(c))
        if (f != c) z.setRestriction(f, c, ChainMap(z.stalk(f), z.stalk(c)));
    fixed = z;
  } else if (o.mutation != "none") {
    throw Error(ErrorKind::SchemaError, "mutation is none, bump:<stage>, untruncated, constant or zero", "--mutation");
  }
  std::optional<DeligneIC> ic;
  if (!fixed) ic.emplace(x, ring, opt);
  Table s{"axioms", {"perversity", "status", "failures"}, {}};
  Table f{"failures", {"perversity", "axiom", "face", "degree", "detail"}, {}};
  for (const auto& p : ps) {
    auto rep = checkAxioms(x, p, fixed ? *fixed : ic->sheaf(p));
    s.rows.push_back({p.str(), rep.skipped ? "skipped" : rep.ok() ? "ok" : "failed", std::to_string(rep.failures.size())});
    for (const auto& a : rep.failures) f.rows.push_back({p.str(), a.axiom, a.face, std::to_string(a.degree), a.detail});
  }
  r.tables.push_back(std::move(s));
  r.tables.push_back(std::move(f));
  return r;
}

SimplicialMap parseMap(const Json& j) {
  auto src = parseComplex(need(j, "source", ""), "/source");
  auto tgt = parseComplex(need(j, "target", ""), "/target");
  const auto& m = need(j, "map", "");
  if (!m.is_object()) throw schemaError("map sends source labels to target labels", "/map");
  std::map<std::string, std::string> vm;
  for (const auto& [k, v] : m.items()) vm[k] = label(v, "/map/" + k);
  try {
    return SimplicialMap::fromLabels(src, tgt, vm);
  } catch (const Error& e) {
    throw Error(e.kind(), e.detail(), "/map");
  }
}

// an array of p(2..n), the string "inf" (dimension from --n), or {"n", "values"}
Perversity perversityFromJson(const Json& j, int n) {
  auto fromArray = [](const Json& v, const std::string& ptr) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) throw schemaError("perversity values are integers", ptr + "/" + std::to_string(i));
      s += (i ? "," : "") + std::to_string(v[i].get<int>());
    }
    return s;
  };
  if (j.is_array()) {
    if (j.empty()) throw schemaError("a perversity lists p(2..n)", "/");
    return parsePerversity(fromArray(j, ""), static_cast<int>(j.size()) + 1);
  }
  if (j.is_string()) {
    if (n < 2) throw schemaError("a bare \"inf\" needs --n", "/");
    return parsePerversity(j.get<std::string>(), n);
  }
  const auto& jn = need(j, "n", "");
  if (!jn.is_number_integer()) throw schemaError("n is an integer", "/n");
  const auto& v = need(j, "values", "");
  if (v.is_string()) return parsePerversity(v.get<std::string>(), jn.get<int>());
  if (!v.is_array()) throw schemaError("values is an array of integers or \"inf\"", "/values");
  return parsePerversity(fromArray(v, "/values"), jn.get<int>());
}

Report perversityCmd(const Options& o) {
  int n = o.n;
  if (!o.input.empty()) {
    auto j = loadJson(o.input);
    auto p = perversityFromJson(j, n);
    n = p.n();
  }
  if (n < 2 || n > 12) throw Error(ErrorKind::InvalidPerversity, "dimension must lie in 2..12", "--n");
  Report r{"perversity", {{"n", std::to_string(n)}, {"sum_rule", "smallest dominating perversity, inf when none"}}, {}};
  if (!o.p.empty()) {
    auto p = parsePerversity(o.p, n);
    if (!o.q.empty()) {
      auto q = parsePerversity(o.q, n);
      r.tables.push_back({"oplus", {"p", "q", "sum"}, {{p.str(), q.str(), oplus(p, q).str()}}});
    }
    if (!o.s.empty()) {
      auto [s0, s1] = parseRange(o.s, "--s");
      Table t{"l_target", {"p", "s", "target"}, {}};
      for (int s = s0; s <= s1; ++s) t.rows.push_back({p.str(), std::to_string(s), lPerversity(p, s).str()});
      r.meta.emplace_back("l_clipping", "smallest dominating perversity, inf when none");
      r.tables.push_back(std::move(t));
    }
    if (o.q.empty() && o.s.empty()) r.tables.push_back({"perversity", {"p", "double_finite"}, {{p.str(), goreskyDoubleFinite(p) ? "yes" : "no"}}});
    return r;
  }
  const auto& all = enumeratePerversities(n);
  Table e{"perversities", {"index", "p", "double_finite"}, {}};
  for (std::size_t i = 0; i < all.size(); ++i)
    e.rows.push_back({std::to_string(i), all[i].str(), all[i].isInfinite() ? "-" : goreskyDoubleFinite(all[i]) ? "yes" : "no"});
  Table t{"oplus", {"p", "q", "sum"}, {}};
  for (const auto& a : all)
    for (const auto& b : all) t.rows.push_back({a.str(), b.str(), oplus(a, b).str()});
  r.tables.push_back(std::move(e));
  r.tables.push_back(std::move(t));
  return r;
}

Report validateCmd(const Options& o) {
  auto j = loadJson(o.input);
  std::string kind = o.kind == "auto" ? detectKind(j) : o.kind;
  if (kind == "complex") parseComplex(j);
  else if (kind == "filtered") {
    auto k = parseComplex(j);
    parseLevels(j, k);
  } else if (kind == "stratified") parseStratified(j);
  else if (kind == "descriptor") parseDescriptor(j).validate();
  else if (kind == "perversity") {
    Options p;
    p.input = o.input;
    perversityCmd(p);
  } else if (kind == "report") validateReport(j);
  else if (kind == "map") parseMap(j);
  else throw Error(ErrorKind::SchemaError, "unknown kind '" + kind + "'", "--kind");
  return Report{"validate", {}, {{"validation", {"kind", "status"}, {{kind, "OK"}}}}};
}

bool isValidation(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidPerversity:
    case ErrorKind::BadStrata:
    case ErrorKind::UnknownVertex:
    case ErrorKind::NotSimplicial:
    case ErrorKind::MixedComplexes:
    case ErrorKind::MissingDualComplex:
    case ErrorKind::UnsupportedRing:
    case ErrorKind::DegreeOutOfRange:
      return true;
    default:
      return false;
  }
}

std::string errorJson(const std::string& kind, const std::string& msg, const std::string& where) {
  Json e;
  e["error"] = kind;
  e["message"] = msg;
  e["where"] = where;
  return e.dump(2) + "\n";
}

void writeAtomic(const std::string& path, const std::string& text) {
  static std::atomic<unsigned> serial{0};
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(serial++);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::ComputeError, "cannot write output", path);
    out << text;
    if (!out) throw Error(ErrorKind::ComputeError, "write failed", path);
  }
  fs::rename(tmp, target);
}

}  // namespace

// ---------------------------------------------------------------- formats

std::string toTsv(const Report& r) {
  std::string out = "# " + r.command;
  for (const auto& [k, v] : r.meta) out += "\t" + k + "=" + v;
  out += "\n";
  for (const auto& t : r.tables) {
    out += "\n## " + t.name + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "\t" : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
      out += "\n";
    }
  }
  return out;
}

std::string toJson(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["meta"] = Json::object();
  for (const auto& [k, v] : r.meta) j["meta"][k] = v;
  j["tables"] = Json::array();
  for (const auto& t : r.tables) {
    Json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = t.rows;
    j["tables"].push_back(jt);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- parsing

SimplicialComplex parseComplex(const Json& j, const std::string& ptr) {
  const auto& vs = need(j, "vertices", ptr);
  if (!vs.is_array()) throw schemaError("vertices must be an array", ptr + "/vertices");
  std::vector<std::string> order;
  std::set<std::string> known;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto l = label(vs[i], ptr + "/vertices/" + std::to_string(i));
    if (!known.insert(l).second) throw schemaError("duplicate vertex '" + l + "'", ptr + "/vertices/" + std::to_string(i));
    order.push_back(l);
  }
  auto facets = parseFacets(need(j, "facets", ptr), ptr + "/facets", known);
  return SimplicialComplex::fromFacets(order, facets);
}

StratifiedComplex parseStratified(const Json& j) {
  auto k = parseComplex(j);
  std::map<int, std::vector<Simplex>> strata;
  auto it = j.find("strata");
  if (it != j.end()) {
    if (!it->is_array()) throw schemaError("strata must be an array", "/strata");
    std::set<std::string> known(k.labels().begin(), k.labels().end());
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string pi = "/strata/" + std::to_string(i);
      const auto& c = need((*it)[i], "codim", pi);
      if (!c.is_number_integer()) throw schemaError("codim is an integer", pi + "/codim");
      auto fs = parseFacets(need((*it)[i], "facets", pi), pi + "/facets", known);
      auto& dst = strata[c.get<int>()];
      for (const auto& f : fs) {
        Simplex s;
        for (const auto& l : f) s.push_back(k.vertexIndex(l));
        std::sort(s.begin(), s.end());
        dst.push_back(s);
      }
    }
  }
  return stratify(k, strata);
}

HyperresolutionDescriptor parseDescriptor(const Json& j) {
  HyperresolutionDescriptor h;
  const auto& n = need(j, "n", "");
  if (!n.is_number_integer() || n.get<int>() < 0 || n.get<int>() > 6) throw schemaError("n is an integer in 0..6", "/n");
  h.n = n.get<int>();
  const auto& sp = need(j, "spaces", "");
  if (!sp.is_object()) throw schemaError("spaces maps subset names to complexes", "/spaces");
  for (const auto& [key, v] : sp.items()) {
    unsigned a;
    try {
      a = CubicalCodiagram::parseSubset(key, h.n);
    } catch (const Error& e) {
      throw schemaError(e.detail(), "/spaces/" + key);
    }
    h.spaces[a] = parseComplex(v, "/spaces/" + key);
  }
  const auto& mp = need(j, "maps", "");
  if (!mp.is_object()) throw schemaError("maps are keyed by inclusions like \"0<01\"", "/maps");
  for (const auto& [key, v] : mp.items()) {
    std::string p = "/maps/" + key;
    auto lt = key.find('<');
    if (lt == std::string::npos) throw schemaError("map keys look like \"0<01\"", p);
    unsigned a, b;
    try {
      a = CubicalCodiagram::parseSubset(key.substr(0, lt), h.n);
      b = CubicalCodiagram::parseSubset(key.substr(lt + 1), h.n);
    } catch (const Error& e) {
      throw schemaError(e.detail(), p);
    }
    if ((a & b) != a || __builtin_popcount(b) != __builtin_popcount(a) + 1)
      throw schemaError("maps go along inclusions of one more index", p);
    if (!h.spaces.count(a) || !h.spaces.count(b)) throw schemaError("map between unlisted spaces", p);
    if (!v.is_object()) throw schemaError("a map sends source vertex labels to target labels", p);
    std::map<std::string, std::string> vm;
    for (const auto& [src, tgt] : v.items()) vm[src] = label(tgt, p + "/" + src);
    try {
      h.maps[{a, b}] = SimplicialMap::fromLabels(h.spaces.at(b), h.spaces.at(a), vm);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail(), p);
    }
  }
  if (auto t = j.find("target"); t != j.end()) h.target = parseComplex(*t, "/target");
  if (auto d = j.find("dualComplex"); d != j.end()) h.dualComplex = parseComplex(*d, "/dualComplex");
  return h;
}

Perversity parsePerversity(const std::string& s0, int n) {
  std::string s = s0;
  if (s == "inf" || s == "infinity") return Perversity::infinity(n);
  if (s == "zero") return Perversity::zero(n);
  if (s == "top") return Perversity::top(n);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<int> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidPerversity, "cannot read perversity '" + s0 + "'", s0);
    }
  }
  if (static_cast<int>(v.size()) != n - 1)
    throw Error(ErrorKind::InvalidPerversity,
                "perversity needs " + std::to_string(n - 1) + " values p(2..n) for dimension " + std::to_string(n), s0);
  return Perversity::make(n, v);
}

Json complexToJson(const SimplicialComplex& k) {
  Json j;
  j["vertices"] = k.labels();
  j["facets"] = Json::array();
  for (const auto& f : k.facets()) {
    Json face = Json::array();
    for (int v : f) face.push_back(k.labels()[v]);
    j["facets"].push_back(face);
  }
  return j;
}

Json stratifiedToJson(const StratifiedComplex& x) {
  Json j = complexToJson(x.complex());
  j["strata"] = Json::array();
  const auto& k = x.complex();
  for (int c = 2; c <= x.dimension(); ++c) {
    // pieces of X_{n-c} not already in X_{n-c-1}
    const auto& sk = x.skeleton(c);
    Json fs = Json::array();
    for (const auto& f : sk.facets()) {
      Simplex s;
      for (int v : f) s.push_back(k.vertexIndex(sk.labels()[v]));
      if (c < x.dimension() && x.inSkeleton(c + 1, s)) continue;
      Json face = Json::array();
      for (int v : s) face.push_back(k.labels()[v]);
      fs.push_back(face);
    }
    if (fs.empty()) continue;
    j["strata"].push_back({{"codim", c}, {"facets", fs}});
  }
  return j;
}

Json descriptorToJson(const HyperresolutionDescriptor& h) {
  Json j;
  j["n"] = h.n;
  j["spaces"] = Json::object();
  for (unsigned a : CubicalCodiagram::subsets(h.n)) j["spaces"][CubicalCodiagram::subsetName(a)] = complexToJson(h.spaces.at(a));
  j["maps"] = Json::object();
  for (const auto& [ab, m] : h.maps) {
    Json vm = Json::object();
    for (std::size_t v = 0; v < m.source().vertexCount(); ++v) vm[m.source().labels()[v]] = m.target().labels()[m(static_cast<int>(v))];
    j["maps"][CubicalCodiagram::subsetName(ab.first) + "<" + CubicalCodiagram::subsetName(ab.second)] = vm;
  }
  if (h.target) j["target"] = complexToJson(*h.target);
  if (h.dualComplex) j["dualComplex"] = complexToJson(*h.dualComplex);
  return j;
}

std::string detectKind(const Json& j) {
  if (j.is_string() || j.is_array()) return "perversity";
  if (!j.is_object()) throw schemaError("top level must be an object", "/");
  if (j.contains("tables")) return "report";
  if (j.contains("source") && j.contains("map")) return "map";
  if (j.contains("spaces")) return "descriptor";
  if (j.contains("strata")) return "stratified";
  if (j.contains("levels")) return "filtered";
  if (j.contains("values")) return "perversity";
  if (j.contains("facets")) return "complex";
  throw schemaError("cannot tell the input kind from its keys", "/");
}

void validateReport(const Json& j) {
  if (!j.is_object()) throw schemaError("report must be an object", "/");
  if (!need(j, "command", "").is_string()) throw schemaError("command is a string", "/command");
  const auto& meta = need(j, "meta", "");
  if (!meta.is_object()) throw schemaError("meta is an object", "/meta");
  for (const auto& [k, v] : meta.items())
    if (!v.is_string()) throw schemaError("meta values are strings", "/meta/" + k);
  const auto& ts = need(j, "tables", "");
  if (!ts.is_array()) throw schemaError("tables is an array", "/tables");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string p = "/tables/" + std::to_string(i);
    if (!need(ts[i], "name", p).is_string()) throw schemaError("name is a string", p + "/name");
    const auto& cols = need(ts[i], "columns", p);
    if (!cols.is_array()) throw schemaError("columns is an array", p + "/columns");
    for (const auto& c : cols)
      if (!c.is_string()) throw schemaError("column names are strings", p + "/columns");
    const auto& rows = need(ts[i], "rows", p);
    if (!rows.is_array()) throw schemaError("rows is an array", p + "/rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string pr = p + "/rows/" + std::to_string(r);
      if (!rows[r].is_array() || rows[r].size() != cols.size()) throw schemaError("row width differs from the columns", pr);
      for (const auto& c : rows[r])
        if (!c.is_string()) throw schemaError("cells are strings", pr);
    }
  }
}

std::string schema(const std::string& kind) {
  static const std::map<std::string, std::string> docs = {
      {"complex", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "SimplicialComplex",
  "type": "object",
  "required": ["vertices", "facets"],
  "properties": {
    "vertices": {"type": "array", "items": {"type": ["string", "integer"]}, "uniqueItems": true},
    "facets": {"type": "array", "items": {"type": "array", "minItems": 1, "items": {"type": ["string", "integer"]}}}
  }
})"},
      {"filtered", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "FilteredComplex",
  "description": "F^p is spanned by the simplices whose largest vertex level is at least p; missing levels are 0",
  "type": "object",
  "required": ["vertices", "facets"],
  "properties": {
    "vertices": {"type": "array", "items": {"type": ["string", "integer"]}},
    "facets": {"type": "array", "items": {"type": "array", "minItems": 1}},
    "levels": {"type": "object", "additionalProperties": {"type": "integer"}}
  }
})"},
      {"stratified", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "StratifiedComplex",
  "description": "X_{n-k} is generated by the strata pieces of codimension at least k",
  "type": "object",
  "required": ["vertices", "facets"],
  "properties": {
    "vertices": {"type": "array", "items": {"type": ["string", "integer"]}},
    "facets": {"type": "array", "items": {"type": "array", "minItems": 1}},
    "strata": {"type": "array", "items": {
      "type": "object", "required": ["codim", "facets"],
      "properties": {"codim": {"type": "integer", "minimum": 2}, "facets": {"type": "array", "items": {"type": "array"}}}
    }}
  }
})"},
      {"descriptor", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "HyperresolutionDescriptor",
  "type": "object",
  "required": ["n", "spaces", "maps"],
  "properties": {
    "n": {"type": "integer", "minimum": 0, "maximum": 6},
    "spaces": {"type": "object", "description": "subset names like \"01\" to SimplicialComplex",
               "additionalProperties": {"$ref": "complex"}},
    "maps": {"type": "object", "description": "\"a<b\" to a vertex map X_b -> X_a",
             "additionalProperties": {"type": "object", "additionalProperties": {"type": ["string", "integer"]}}},
    "target": {"$ref": "complex"},
    "dualComplex": {"$ref": "complex"}
  }
})"},
      {"perversity", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "Perversity",
  "description": "values are p(2), ..., p(n); the dimension of a bare array is its length plus one",
  "oneOf": [
    {"type": "array", "minItems": 1, "items": {"type": "integer"}},
    {"type": "string", "enum": ["inf"]},
    {"type": "object", "required": ["n", "values"],
     "properties": {"n": {"type": "integer", "minimum": 2},
                    "values": {"oneOf": [{"type": "array", "items": {"type": "integer"}}, {"type": "string", "enum": ["inf"]}]}}}
  ]
})"},
      {"map", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "SimplicialMap",
  "type": "object",
  "required": ["source", "target", "map"],
  "properties": {
    "source": {"$ref": "complex"},
    "target": {"$ref": "complex"},
    "map": {"type": "object", "description": "source vertex label to target vertex label",
            "additionalProperties": {"type": ["string", "integer"]}}
  }
})"},
      {"report", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "Report",
  "type": "object",
  "required": ["command", "meta", "tables"],
  "properties": {
    "command": {"type": "string"},
    "meta": {"type": "object", "additionalProperties": {"type": "string"}},
    "tables": {"type": "array", "items": {
      "type": "object", "required": ["name", "columns", "rows"],
      "properties": {
        "name": {"type": "string"},
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}
      }
    }}
  }
})"},
      {"error", R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "Error",
  "type": "object",
  "required": ["error", "message", "where"],
  "properties": {"error": {"type": "string"}, "message": {"type": "string"}, "where": {"type": "string"}}
})"},
  };
  auto it = docs.find(kind);
  if (it == docs.end()) throw Error(ErrorKind::SchemaError, "unknown schema kind '" + kind + "'", "--kind");
  return it->second + "\n";
}

// ---------------------------------------------------------------- entry

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Cochain operations, weight spectral sequences and intersection cohomology on finite models", "ctop"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s, bool input) {
    auto* opt = s->add_option("-i,--input", o.input, "input JSON file");
    if (input) opt->required();
    s->add_option("--ring", o.ring, "F2 or Q")->capture_default_str();
    s->add_option("--format", o.format, "tsv or json");
    s->add_option("-o,--output", o.output, "report file (written atomically)");
    s->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  };
  auto* coh = app.add_subcommand("cohomology", "simplicial cohomology dimensions");
  common(coh, true);
  auto* st = app.add_subcommand("steenrod", "Steenrod square matrices on H^*(K; F2)");
  common(st, true);
  st->add_option("--s", o.s, "square index or range a..b");
  auto* sp = app.add_subcommand("spectral", "spectral sequence of a vertex-level filtration");
  common(sp, true);
  sp->add_option("--pages", o.pages, "page range a..b")->capture_default_str();
  auto* wt = app.add_subcommand("weight", "weight spectral sequence of a hyperresolution descriptor");
  common(wt, true);
  wt->add_option("--pages", o.pages, "page range a..b")->capture_default_str();
  wt->add_flag("--steenrod", o.steenrod, "page Steenrod squares on E1 and E2");
  auto* ih = app.add_subcommand("ih", "intersection homology");
  common(ih, true);
  ih->add_option("--perversity", o.perversity, "all, inf, zero, top or values like 0,1")->capture_default_str();
  ih->add_option("--method", o.method, "chains, sheaf or both")->capture_default_str();
  auto* dl = app.add_subcommand("deligne", "Deligne sheaf: stalks, hypercohomology, squares");
  common(dl, true);
  dl->add_option("--perversity", o.perversity, "all, inf, zero, top or values like 0,1")->capture_default_str();
  dl->add_flag("--steenrod", o.steenrod, "IH Steenrod squares");
  dl->add_option("--s", o.s, "square index or range a..b");
  auto* ax = app.add_subcommand("check-axioms", "axiom checker on the Deligne sheaf or a mutation");
  common(ax, true);
  ax->add_option("--perversity", o.perversity, "all, inf, zero, top or values like 0,1")->capture_default_str();
  ax->add_option("--mutation", o.mutation, "none, bump:<stage>, untruncated, constant or zero")->capture_default_str();
  auto* pv = app.add_subcommand("perversity", "perversity enumeration and arithmetic");
  common(pv, false);
  pv->add_option("--n", o.n, "dimension");
  pv->add_option("--p", o.p, "perversity");
  pv->add_option("--q", o.q, "second perversity for the sum");
  pv->add_option("--s", o.s, "square index or range for L(p, s)");
  auto* va = app.add_subcommand("validate", "schema check without computing");
  common(va, true);
  va->add_option("--kind", o.kind, "auto, complex, map, filtered, stratified, descriptor, perversity or report")->capture_default_str();
  auto* sc = app.add_subcommand("schema", "print a published JSON schema");
  sc->add_option("--kind", o.kind, "complex, map, filtered, stratified, descriptor, perversity, report or error")->required();

  std::vector<std::string> storage{"ctop"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  Outcome out;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    int code = app.exit(e, os, es);
    if (code == 0) {
      out.output = os.str();
      return out;
    }
    out.exit = 2;
    out.error = errorJson("UsageError", e.what(), "");
    return out;
  }
  try {
    if (sc->parsed()) {
      out.output = schema(o.kind);
      if (!o.output.empty()) writeAtomic(o.output, out.output);
      return out;
    }
    if (o.threads < 1) throw Error(ErrorKind::SchemaError, "threads must be positive", "--threads");
    int before = threadCount();
    setThreadCount(o.threads);
    struct Restore {
      int n;
      ~Restore() { setThreadCount(n); }
    } restore{before};
    Report r;
    std::string fmt = o.format;
    if (coh->parsed()) r = cohomologyCmd(o);
    else if (st->parsed()) r = steenrodCmd(o);
    else if (sp->parsed()) r = spectralCmd(o);
    else if (wt->parsed()) r = weightCmd(o);
    else if (ih->parsed()) r = ihCmd(o);
    else if (dl->parsed()) r = deligneCmd(o);
    else if (ax->parsed()) {
      r = axiomsCmd(o);
      if (fmt.empty()) fmt = "json";
    } else if (pv->parsed()) r = perversityCmd(o);
    else if (va->parsed()) r = validateCmd(o);
    if (fmt.empty()) fmt = "tsv";
    if (fmt != "tsv" && fmt != "json") throw Error(ErrorKind::SchemaError, "format is tsv or json", "--format");
    out.output = fmt == "json" ? toJson(r) : toTsv(r);
    if (!o.output.empty()) writeAtomic(o.output, out.output);
  } catch (const Error& e) {
    out.exit = isValidation(e.kind()) ? 2 : 3;
    out.error = errorJson(errorKindName(e.kind()), e.detail(), e.where());
  } catch (const std::exception& e) {
    out.exit = 4;
    out.error = errorJson("InternalError", e.what(), "");
  }
  return out;
}

}  // namespace ctop::cli
