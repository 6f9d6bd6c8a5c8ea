#include "trop/counting.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "trop/error.hpp"

namespace trop {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Integer abs_det(Vec2 a, Vec2 b) { return Integer(static_cast<long>(std::abs(det(a, b)))); }

struct PassState {
  const PointConfiguration* points = nullptr;
  bool coincident = false;
  CountReport report;
  std::set<std::string> curve_keys;
  std::set<std::string> evidence_keys;
};

void add_evidence(PassState& st, Verdict kind, const CombinatorialType& t, std::string reason) {
  if (!st.evidence_keys.insert(canonical_form(t)).second) return;
  st.report.general_position.evidence.push_back({kind, t, codimension(t), std::move(reason)});
}

void record_curves(PassState& st, const CombinatorialType& t, const SolveResult& res) {
  for (const StratumCoordinates& c : res.curves) {
    std::string key = canonical_form(t);
    if (!st.curve_keys.insert(key).second) continue;
    const Integer m = curve_multiplicity(t);
    st.report.total += m;
    st.report.curves.push_back({t, std::move(key), c, m});
  }
}

void process_hit(PassState& st, const CatalogEntry& entry, const ShapeSolver& solver, const ShapeSolver::Hit& hit) {
  const CombinatorialType t = solver.labelled(hit);
  SolveResult res;
  try {
    res = solve_with_evidence(t, *st.points);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSystem) throw;
    add_evidence(st, Verdict::Excluded, t, "positive-dimensional fibre");
    return;
  }
  if (res.curves.empty() && res.boundary.empty()) return;
  if (!entry.exceptional && entry.codim >= 1) {
    add_evidence(st, entry.codim == 1 ? Verdict::Wall : Verdict::Excluded, t, "solution on a positive-codimension type");
    return;
  }
  record_curves(st, t, res);
  if (res.boundary.empty()) return;
  const StratumFrame frame = make_frame(t);
  for (const auto& zero : res.boundary) {
    std::optional<CombinatorialType> contracted;
    try {
      contracted = contract_face(t, frame, zero);
    } catch (const Error&) {
      add_evidence(st, Verdict::Excluded, t, "solution on a degenerate face");
      continue;
    }
    const CombinatorialType& face = *contracted;
    if (is_exceptional(face)) continue;  // counted through the exceptional type itself
    add_evidence(st, codimension(face) == 1 ? Verdict::Wall : Verdict::Excluded, face,
                 "solution on the boundary of a codimension-" + std::to_string(entry.codim) + " stratum");
  }
}

void finish(PassState& st) {
  auto& gp = st.report.general_position;
  gp.verdict = Verdict::General;
  for (const auto& e : gp.evidence) {
    if (e.kind == Verdict::Excluded) gp.verdict = Verdict::Excluded;
    if (e.kind == Verdict::Wall && gp.verdict == Verdict::General) gp.verdict = Verdict::Wall;
  }
  std::sort(st.report.curves.begin(), st.report.curves.end(),
            [](const CountedCurve& a, const CountedCurve& b) { return a.key < b.key; });
}

}  // namespace

Integer vertex_multiplicity(const CombinatorialType& t, int vertex) {
  const Graph& g = t.graph();
  const auto& flags = g.flags_at(vertex);
  std::vector<Vec2> v;
  for (int f : flags) v.push_back(t.decorated.v(f));
  if (v.size() == 3) return abs_det(v[0], v[1]);
  if (v.size() == 4) {
    Integer best = 0;
    const int pair[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& p : pair) best = std::max<Integer>(best, abs_det(v[idx(p[0])], v[idx(p[1])]) * abs_det(v[idx(p[2])], v[idx(p[3])]));
    return best;
  }
  throw Error(ErrorCode::UnsupportedValence,
              "vertex " + std::to_string(vertex) + " has valence " + std::to_string(v.size()));
}

Integer curve_multiplicity(const CombinatorialType& t) {
  Integer m = 1;
  for (int v = 0; v < t.graph().vertex_count(); ++v) m *= vertex_multiplicity(t, v);
  return m;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::General: return "GENERAL";
    case Verdict::Wall: return "WALL";
    case Verdict::Excluded: return "EXCLUDED";
  }
  return "?";
}

Json report_to_json(const CountReport& r) {
  auto integer = [](const Integer& z) -> Json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  Json curves = Json::array();
  for (const auto& c : r.curves)
    curves.push_back({{"type", c.key}, {"mult", integer(c.multiplicity)}, {"coords", coordinates_to_json(c.coords)},
                      {"graph", type_to_json(c.type)}});
  Json evidence = Json::array();
  for (const auto& e : r.general_position.evidence) {
    Json j{{"kind", to_string(e.kind)}, {"codim", e.codim}, {"reason", e.reason}};
    if (e.type) {
      j["type"] = canonical_form(*e.type);
      j["graph"] = type_to_json(*e.type);
    }
    evidence.push_back(std::move(j));
  }
  return {{"N", integer(r.total)},
          {"genus", r.genus},
          {"degree", degree_to_json(r.degree)},
          {"points", points_to_json(r.points)},
          {"curves", std::move(curves)},
          {"general_position", {{"verdict", to_string(r.general_position.verdict)}, {"evidence", std::move(evidence)}}}};
}

Counter::Counter(TypeCatalog catalog) : catalog_(std::move(catalog)) {
  n_ = minimum_marks(catalog_.degree, catalog_.genus);
}

std::vector<CountReport> Counter::count_all(const std::vector<PointConfiguration>& configs) const {
  std::vector<PassState> states(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    PassState& st = states[i];
    st.points = &configs[i];
    st.report.genus = catalog_.genus;
    st.report.degree = catalog_.degree;
    st.report.points = configs[i];
    st.report.total = 0;
    if (static_cast<int>(configs[i].size()) != n_)
      throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(n_) + " points, got " +
                                               std::to_string(configs[i].size()));
    for (std::size_t a = 0; a < configs[i].size() && !st.coincident; ++a)
      for (std::size_t b = a + 1; b < configs[i].size(); ++b)
        if (configs[i][a] == configs[i][b]) {
          st.coincident = true;
          st.report.general_position.evidence.push_back(
              {Verdict::Excluded, std::nullopt, 0,
               "points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " coincide"});
          break;
        }
  }
  for (const CatalogEntry& entry : catalog_.entries) {
    const ShapeSolver solver(entry.type);
    for (PassState& st : states) {
      if (st.coincident) continue;
      for (const auto& hit : solver.search(*st.points, true)) process_hit(st, entry, solver, hit);
    }
  }
  std::vector<CountReport> out;
  for (PassState& st : states) {
    finish(st);
    out.push_back(std::move(st.report));
  }
  return out;
}

CountReport Counter::count(const PointConfiguration& points) const { return count_all({points}).front(); }

int default_max_codim(int, const Degree& degree) { return degree.size() <= 6 ? 2 : 0; }

TypeCatalog catalog_for(int genus, const Degree& degree, const CountOptions& options) {
  EnumerationOptions eo;
  eo.max_codim = options.max_codim >= 0 ? options.max_codim : default_max_codim(genus, degree);
  if (options.cache_dir) return cached_enumerate(genus, degree, eo, *options.cache_dir);
  return enumerate_types(genus, degree, eo);
}

CountReport count_curves(int genus, const Degree& degree, const PointConfiguration& points,
                         const CountOptions& options) {
  CountReport r = Counter(catalog_for(genus, degree, options)).count(points);
  if (!r.general_position.general() && !options.allow_walls) {
    std::string msg = "configuration is not in general position (" + to_string(r.general_position.verdict) + ")";
    if (!r.general_position.evidence.empty()) msg += ": " + r.general_position.evidence.front().reason;
    throw Error(ErrorCode::NotGeneralPosition, msg);
  }
  return r;
}

GeneralPosition check_general_position(int genus, const Degree& degree, const PointConfiguration& points,
                                       const CountOptions& options) {
  return Counter(catalog_for(genus, degree, options)).count(points).general_position;
}

PointConfiguration perturb(const PointConfiguration& points, const Rational& eps, std::uint64_t seed) {
  if (sgn(eps) < 0) throw Error(ErrorCode::InvalidInput, "perturbation size must be nonnegative");
  std::mt19937_64 rng(seed);
  const std::int64_t span = std::int64_t{1} << 32;
  std::uniform_int_distribution<std::int64_t> dist(-span, span);
  const Rational unit = eps / Rational(Integer(static_cast<long>(span)));
  PointConfiguration out = points;
  for (Point2& p : out) {
    p.x += unit * Integer(static_cast<long>(dist(rng)));
    p.y += unit * Integer(static_cast<long>(dist(rng)));
    p.x.canonicalize();
    p.y.canonicalize();
  }
  return out;
}

PointConfiguration random_configuration(int n, std::uint64_t seed, int bits) {
  if (bits < 2) throw Error(ErrorCode::InvalidInput, "need at least 2 random bits");
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  const Integer half = Integer(1) << (bits - 1);
  auto coordinate = [&]() {
    const Integer num = rng.get_z_bits(static_cast<unsigned long>(bits)) - half;
    const Integer den = rng.get_z_bits(16) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  PointConfiguration out;
  for (int i = 0; i < n; ++i) {
    const Rational x = coordinate();
    out.push_back({x, coordinate()});
  }
  return out;
}

}  // namespace trop
