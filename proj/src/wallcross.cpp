#include "trop/wallcross.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "trop/error.hpp"

namespace trop {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Integer z(std::int64_t v) { return Integer(static_cast<long>(v)); }

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

PointConfiguration as_points(const Vector& v) {
  PointConfiguration p;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) p.push_back({v[i], v[i + 1]});
  return p;
}

PointConfiguration shifted(const PointConfiguration& q, const Vector& c, const Rational& s) {
  PointConfiguration out = q;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].x += s * c[2 * i];
    out[i].y += s * c[2 * i + 1];
  }
  return out;
}

// Scales to a primitive integer vector with the first nonzero entry positive.
Vector primitive_integer(Vector v) {
  Integer l = 1;
  for (const Rational& q : v)
    if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Integer g = 0;
  for (Rational& q : v) {
    q *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  int lead = 0;
  for (const Rational& q : v)
    if (sgn(q) != 0) {
      lead = sgn(q);
      break;
    }
  if (g != 0)
    for (Rational& q : v) q /= Rational(g * lead);
  return v;
}

// Linear behaviour of one resolution's solution along q + s c.
struct Crossing {
  const Resolution* resolution = nullptr;
  int side = 0;  ///< +1 / -1: present for small s of that sign; 0: neither
  std::optional<Rational> bound;  ///< |s| below which no positive form changes sign
};

Crossing analyse(const Resolution& r, const PointConfiguration& q, const Vector& c) {
  const AffineSystem sys = build_affine_system(r.type);
  const Matrix m = sys.stacked();
  const AffineSolution at = solve(m, sys.rhs(q));
  const AffineSolution dir = solve(m, sys.rhs(as_points(c)));
  if (!at.consistent || !dir.consistent || !at.kernel.empty())
    throw Error(ErrorCode::DegenerateSystem, "resolution " + canonical_form(r.type) + " is not solvable uniquely");
  Crossing out;
  out.resolution = &r;
  int plus = 0, minus = 0, zeros = 0;
  for (const Vector& f : sys.frame.forms) {
    const Rational f0 = dot(f, at.particular);
    const Rational f1 = dot(f, dir.particular);
    if (sgn(f0) < 0) return out;  // not adjacent to this wall point
    if (sgn(f0) == 0) {
      ++zeros;
      if (sgn(f1) > 0) ++plus;
      if (sgn(f1) < 0) ++minus;
      continue;
    }
    if (sgn(f1) != 0) {
      const Rational b = f0 / abs(f1);
      if (!out.bound || b < *out.bound) out.bound = b;
    }
  }
  if (zeros > 0 && plus == zeros) out.side = 1;
  if (zeros > 0 && minus == zeros) out.side = -1;
  return out;
}

Rational step_size(const std::vector<Crossing>& crossings) {
  Rational delta = 1;
  for (const auto& c : crossings)
    if (c.bound && *c.bound / 2 < delta) delta = *c.bound / 2;
  return delta;
}

int four_valent_vertex(const CombinatorialType& t) {
  for (int v = 0; v < t.graph().vertex_count(); ++v)
    if (t.graph().valence(v) == 4) return v;
  return -1;
}

[[noreturn]] void violation(const CombinatorialType& t, const std::string& what) {
  throw Error(ErrorCode::InvarianceViolation, "wall " + canonical_form(t) + ": " + what);
}

}  // namespace

Integer MuSignature::max_abs() const {
  Integer m = 0;
  for (const Integer& x : mu_hat) m = std::max<Integer>(m, abs(x));
  return m;
}

MuSignature mu_signature(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 v4) {
  if (!(v1 + v2 + v3 + v4).is_zero()) throw Error(ErrorCode::InvalidInput, "vectors at a vertex must sum to zero");
  const std::array<Vec2, 4> all{v1, v2, v3, v4};
  bool spans = false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (det(all[i], all[j]) != 0) spans = true;
  if (!spans) throw Error(ErrorCode::DegenerateVertex, "all vectors at the vertex are collinear");
  MuSignature s;
  s.mu_hat[0] = z(det(v2, v3)) * z(det(v1, v2 + v3));
  s.mu_hat[1] = z(det(v3, v1)) * z(det(v2, v3 + v1));
  s.mu_hat[2] = z(det(v1, v2)) * z(det(v3, v1 + v2));
  return s;
}

Vector wall_normal(const CombinatorialType& t) {
  const int codim = codimension(t);
  if (codim != 1 && !is_exceptional(t))
    throw Error(ErrorCode::NotAWallType, "type has codimension " + std::to_string(codim) + " and is not exceptional");
  const AffineSystem sys = build_affine_system(t);
  const Matrix image = sys.evaluation * stratum_parametrisation(sys.frame);
  const std::size_t n2 = sys.evaluation.rows();
  if (rank(image) + 1 != n2)
    throw Error(ErrorCode::UnexpectedImageDimension,
                "image has dimension " + std::to_string(rank(image)) + ", expected " + std::to_string(n2 - 1));
  return primitive_integer(left_kernel(image).front());
}

std::string to_string(WallCase c) {
  switch (c) {
    case WallCase::FourValent: return "a";
    case WallCase::LowerGenus: return "b";
    case WallCase::MarkedVertex: return "c";
    case WallCase::Exceptional: return "d";
  }
  return "?";
}

WallCase classify_wall(const CombinatorialType& t) {
  if (is_exceptional(t)) return WallCase::Exceptional;
  const int codim = codimension(t);
  if (codim != 1) throw Error(ErrorCode::NotAWallType, "type has codimension " + std::to_string(codim));
  if (graph_genus(t) < t.genus) return WallCase::LowerGenus;
  if (four_valent_vertex(t) >= 0) return WallCase::FourValent;
  return WallCase::MarkedVertex;
}

PointConfiguration sample_wall_point(const CombinatorialType& t, std::mt19937_64& rng) {
  const AffineSystem sys = build_affine_system(t);
  const Matrix param = stratum_parametrisation(sys.frame);
  std::vector<StrictInequality> system;
  for (const Vector& f : sys.frame.forms) {
    StrictInequality ineq;
    ineq.coeffs.assign(param.cols(), Rational(0));
    for (std::size_t r = 0; r < f.size(); ++r)
      if (sgn(f[r]) != 0)
        for (std::size_t c = 0; c < param.cols(); ++c) ineq.coeffs[c] += f[r] * param(r, c);
    ineq.constant = 0;
    system.push_back(std::move(ineq));
  }
  const auto y = find_strict_point(system, param.cols(), &rng);
  if (!y) throw Error(ErrorCode::InvalidInput, "stratum of " + canonical_form(t) + " is empty");
  return as_points(sys.evaluation * (param * *y));
}

LocalReport verify_local_invariance(const CombinatorialType& t, int trials, std::uint64_t seed) {
  LocalReport report;
  report.type_key = canonical_form(t);
  report.wall_case = classify_wall(t);
  if (report.wall_case == WallCase::LowerGenus) violation(t, "codimension-1 type of lower graph genus");
  report.normal = wall_normal(t);
  const std::vector<Resolution> res = resolutions(t);
  std::vector<Integer> mult;
  for (const auto& r : res) mult.push_back(curve_multiplicity(r.type));

  // Resolution index -> mu index for case (a).
  std::vector<int> mu_index(res.size(), -1);
  std::optional<MuSignature> mu;
  if (report.wall_case == WallCase::FourValent) {
    const int v = four_valent_vertex(t);
    const auto& flags = t.graph().flags_at(v);
    // Order the flags so that v1, v2, v3 are pairwise non-parallel when possible.
    std::array<int, 4> order{};
    std::array<Vec2, 4> w;
    bool generic = false;
    for (int last = 4; last-- > 0 && !generic;) {
      std::size_t k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != last) order[k++] = flags[idx(i)];
      order[3] = flags[idx(last)];
      for (std::size_t i = 0; i < 4; ++i) w[i] = t.decorated.v(order[i]);
      generic = !parallel(w[0], w[1]) && !parallel(w[1], w[2]) && !parallel(w[0], w[2]);
    }
    mu = mu_signature(w[0], w[1], w[2], w[3]);
    Integer others = 1;
    for (int u = 0; u < t.graph().vertex_count(); ++u)
      if (u != v) others *= vertex_multiplicity(t, u);
    report.expected = mu->max_abs() * others;
    if (mu->sum() != 0) violation(t, "mu_hat does not sum to zero");
    if (mu->max_abs() != vertex_multiplicity(t, v)) violation(t, "max |mu_hat| differs from the vertex multiplicity");
    // Splitting keeps flag indices: resolution i puts the two of v1,v2,v3
    // other than v_i on a common vertex.
    bool unambiguous = generic;
    for (std::size_t r = 0; r < res.size(); ++r) {
      const Graph& rg = res[r].type.graph();
      for (int i = 0; i < 3; ++i) {
        const int a = order[idx((i + 1) % 3)], b = order[idx((i + 2) % 3)];
        if (rg.boundary(a) == rg.boundary(b)) mu_index[r] = i;
      }
      if (mu_index[r] < 0) unambiguous = false;
    }
    report.mu_checked = unambiguous;
  } else if (report.wall_case == WallCase::Exceptional) {
    report.expected = curve_multiplicity(t);
  }

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    LocalTrial lt;
    lt.wall_point = sample_wall_point(t, rng);
    std::vector<Crossing> crossings;
    for (const auto& r : res) crossings.push_back(analyse(r, lt.wall_point, report.normal));
    lt.delta = step_size(crossings);
    lt.plus_sum = 0;
    lt.minus_sum = 0;
    for (int sign : {1, -1}) {
      const PointConfiguration p = shifted(lt.wall_point, report.normal, lt.delta * sign);
      auto& side = sign > 0 ? lt.plus : lt.minus;
      auto& sum = sign > 0 ? lt.plus_sum : lt.minus_sum;
      for (std::size_t r = 0; r < res.size(); ++r) {
        const auto curves = solve_curves(res[r].type, p);
        const bool present = !curves.empty();
        if (present != (crossings[r].side == sign))
          violation(t, "solving disagrees with the linear side prediction for " + canonical_form(res[r].type));
        if (curves.size() > 1) violation(t, "resolution with several solutions");
        if (!present) continue;
        side.push_back({canonical_form(res[r].type), mult[r]});
        sum += mult[r];
      }
    }
    if (lt.plus_sum != lt.minus_sum)
      violation(t, "sides differ: " + lt.plus_sum.get_str() + " vs " + lt.minus_sum.get_str());
    switch (report.wall_case) {
      case WallCase::FourValent:
        if (lt.plus_sum != report.expected) violation(t, "side sum differs from max |mu_hat| times the other vertices");
        if (report.mu_checked) {
          // Positive mu_hat on one side, negative on the other, zero on neither.
          int positive_side = 0;
          for (std::size_t r = 0; r < res.size(); ++r) {
            const int s = sgn(mu->mu_hat[idx(mu_index[r])]);
            const int where = crossings[r].side;
            if (s == 0) {
              if (where != 0) violation(t, "resolution with mu_hat = 0 has a solution");
              continue;
            }
            if (where == 0) violation(t, "resolution with mu_hat != 0 has no solution");
            const int pos = s > 0 ? where : -where;
            if (positive_side == 0) positive_side = pos;
            if (pos != positive_side) violation(t, "mu_hat signs do not separate the sides");
          }
        }
        break;
      case WallCase::MarkedVertex:
      case WallCase::Exceptional:
        if (lt.plus.size() != 1 || lt.minus.size() != 1) violation(t, "expected exactly one resolution on each side");
        if (lt.plus[0].multiplicity != lt.minus[0].multiplicity) violation(t, "resolutions differ in multiplicity");
        if (report.wall_case == WallCase::Exceptional && lt.plus_sum != report.expected)
          violation(t, "resolution multiplicity differs from the exceptional type's");
        break;
      case WallCase::LowerGenus:
        break;
    }
    report.trials.push_back(std::move(lt));
  }
  return report;
}

GlobalReport verify_global_invariance(int genus, const Degree& degree, int trials, std::uint64_t seed,
                                      const CountOptions& options) {
  const Counter counter(catalog_for(genus, degree, options));
  const int n = counter.points();
  std::mt19937_64 rng(seed);
  GlobalReport report;
  report.genus = genus;
  report.degree = degree;

  std::vector<const CatalogEntry*> walls;
  for (const auto& e : counter.catalog().entries)
    if (e.codim == 1 && !e.exceptional) walls.push_back(&e);

  // Pairs straddling walls first, then random configurations.
  std::vector<PointConfiguration> pairs;
  const int wanted_pairs = walls.empty() ? 0 : std::max(1, trials / 5);
  for (int i = 0; i < wanted_pairs; ++i) {
    const CombinatorialType& t = walls[rng() % walls.size()]->type;
    const PointConfiguration q = sample_wall_point(t, rng);
    const Vector c = wall_normal(t);
    std::vector<Crossing> crossings;
    const auto res = resolutions(t);
    for (const auto& r : res) crossings.push_back(analyse(r, q, c));
    const Rational delta = step_size(crossings);
    pairs.push_back(shifted(q, c, delta));
    pairs.push_back(shifted(q, c, -delta));
  }
  std::vector<Integer> totals;
  auto accept = [&](const std::vector<CountReport>& reports, bool is_pair) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!reports[i].general_position.general()) {
        ++report.rejected;
        continue;
      }
      totals.push_back(reports[i].total);
      if (is_pair && i % 2 == 0 && i + 1 < reports.size() && reports[i + 1].general_position.general()) ++report.wall_pairs;
      if (!is_pair) ++report.random_configs;
    }
  };
  std::vector<PointConfiguration> configs = pairs;
  for (int round = 0; round < 6 && static_cast<int>(totals.size()) < trials; ++round) {
    const int missing = trials - static_cast<int>(totals.size()) - static_cast<int>(configs.size());
    for (int i = 0; i < missing; ++i) configs.push_back(random_configuration(n, rng(), 48));
    const std::size_t pair_count = round == 0 ? pairs.size() : 0;
    const auto reports = counter.count_all(configs);
    accept({reports.begin(), reports.begin() + static_cast<std::ptrdiff_t>(pair_count)}, true);
    accept({reports.begin() + static_cast<std::ptrdiff_t>(pair_count), reports.end()}, false);
    configs.clear();
  }
  report.totals = totals;
  if (totals.empty()) throw Error(ErrorCode::NotGeneralPosition, "no general configuration found");
  report.common_total = totals.front();
  for (const Integer& v : totals)
    if (v != totals.front())
      throw Error(ErrorCode::InvarianceViolation,
                  "counts differ between general configurations: " + totals.front().get_str() + " vs " + v.get_str());
  return report;
}

Json local_report_to_json(const LocalReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    auto side = [](const std::vector<SideCurve>& s) {
      Json a = Json::array();
      for (const auto& c : s) a.push_back({{"resolution", c.resolution}, {"mult", integer_json(c.multiplicity)}});
      return a;
    };
    trials.push_back({{"wall_point", points_to_json(t.wall_point)},
                      {"delta", to_string(t.delta)},
                      {"plus", side(t.plus)},
                      {"minus", side(t.minus)},
                      {"plus_sum", integer_json(t.plus_sum)},
                      {"minus_sum", integer_json(t.minus_sum)}});
  }
  Json normal = Json::array();
  for (const Rational& q : r.normal) normal.push_back(to_string(q));
  return {{"type", r.type_key},   {"case", to_string(r.wall_case)}, {"normal", normal},
          {"expected", integer_json(r.expected)}, {"mu_checked", r.mu_checked}, {"trials", trials}, {"ok", true}};
}

Json global_report_to_json(const GlobalReport& r) {
  Json totals = Json::array();
  for (const auto& v : r.totals) totals.push_back(integer_json(v));
  return {{"genus", r.genus},
          {"degree", degree_to_json(r.degree)},
          {"N", integer_json(r.common_total)},
          {"random_configs", r.random_configs},
          {"wall_pairs", r.wall_pairs},
          {"rejected", r.rejected},
          {"totals", totals},
          {"ok", true}};
}

}  // namespace trop
