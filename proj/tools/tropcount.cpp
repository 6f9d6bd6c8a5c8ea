// tropcount: enumerate types, count tropical curves through points, and
// check that the count does not change across walls.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trop/counting.hpp"
#include "trop/error.hpp"
#include "trop/render.hpp"
#include "trop/wallcross.hpp"

using namespace trop;

namespace {

struct Job {
  std::string command;
  int genus = 0;
  std::string degree = "1";
  std::string points;
  std::uint64_t seed = 1;
  int trials = 10;
  int max_codim = -1;
  std::string perturb;
  std::string cache_dir;
  std::string out;
};

// Inline JSON, a bare integer (projective degree), or a file holding either.
Json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '[' && arg[0] != '{' && std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "cannot parse '" + arg + "': " + e.what());
  }
}

Degree parse_degree(const std::string& arg) {
  const Json j = read_json_arg(arg);
  if (j.is_number_integer()) return Degree::projective(j.get<int>());
  return degree_from_json(j);
}

void emit(const Job& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(job.out);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + job.out);
  out << text;
}

CountOptions count_options(const Job& job) {
  CountOptions o;
  o.max_codim = job.max_codim;
  if (!job.cache_dir.empty()) o.cache_dir = job.cache_dir;
  o.allow_walls = true;
  return o;
}

int run_types(const Job& job, const Degree& degree) {
  const TypeCatalog cat = catalog_for(job.genus, degree, count_options(job));
  Integer total = 0;
  for (const auto& e : cat.entries) total += e.labelings;
  std::ostringstream os;
  os << "# genus " << job.genus << ", degree " << degree.to_string() << ", n = " << minimum_marks(degree, job.genus)
     << ", codim <= " << cat.max_codim << " plus exceptional\n";
  if (total <= 2000) {
    os << "codim\tdim\texceptional\ttype\n";
    for (const auto& e : cat.entries)
      for (const auto& t : labelled_types(e))
        os << e.codim << '\t' << e.dimension << '\t' << (e.exceptional ? "yes" : "no") << '\t' << canonical_form(t)
           << '\n';
  } else {
    os << "codim\tdim\texceptional\tlabelings\tshape\n";
    for (const auto& e : cat.entries)
      os << e.codim << '\t' << e.dimension << '\t' << (e.exceptional ? "yes" : "no") << '\t' << e.labelings.get_str()
         << '\t' << e.key << '\n';
  }
  os << "# " << cat.entries.size() << " shapes, " << total.get_str() << " labelled types\n";
  emit(job, os.str());
  return 0;
}

PointConfiguration job_points(const Job& job, const Degree& degree) {
  const int n = minimum_marks(degree, job.genus);
  if (job.points.empty()) return random_configuration(n, job.seed, 64);
  PointConfiguration p = points_from_json(read_json_arg(job.points));
  if (static_cast<int>(p.size()) != n)
    throw Error(ErrorCode::InvalidInput, "expected n = #Delta + g - 1 = " + std::to_string(n) + " points, got " +
                                             std::to_string(p.size()));
  return p;
}

// Counts, perturbing on request until the configuration is general.
CountReport general_count(const Job& job, const Degree& degree) {
  const Counter counter(catalog_for(job.genus, degree, count_options(job)));
  PointConfiguration p = job_points(job, degree);
  CountReport r = counter.count(p);
  if (r.general_position.general()) return r;
  if (job.perturb.empty()) {
    std::string why = r.general_position.evidence.empty() ? "" : ": " + r.general_position.evidence.front().reason;
    throw Error(ErrorCode::NotGeneralPosition, to_string(r.general_position.verdict) + why);
  }
  const Rational eps = parse_rational(job.perturb);
  if (sgn(eps) <= 0) throw Error(ErrorCode::InvalidInput, "--perturb needs a positive epsilon");
  for (std::uint64_t k = 0; k < 20; ++k) {
    r = counter.count(perturb(p, eps, job.seed + k));
    if (r.general_position.general()) return r;
  }
  throw Error(ErrorCode::NotGeneralPosition, "still not general after 20 perturbations");
}

int run_count(const Job& job, const Degree& degree) {
  emit(job, report_to_json(general_count(job, degree)).dump(2) + "\n");
  return 0;
}

int run_render(const Job& job, const Degree& degree) {
  const CountReport r = general_count(job, degree);
  std::vector<RenderedCurve> curves;
  for (const auto& c : r.curves) curves.push_back({c.type, c.coords});
  emit(job, render_svg(curves, r.points));
  return 0;
}

int run_invariance(const Job& job, const Degree& degree) {
  CountOptions o = count_options(job);
  const GlobalReport r = verify_global_invariance(job.genus, degree, job.trials, job.seed, o);
  emit(job, global_report_to_json(r).dump(2) + "\n");
  return 0;
}

int run_wall(const Job& job, const Degree& degree) {
  const TypeCatalog cat = catalog_for(job.genus, degree, count_options(job));
  Json walls = Json::array();
  std::map<std::string, int> cases;
  for (const auto& e : cat.entries) {
    if (e.codim != 1 && !e.exceptional) continue;
    const LocalReport r = verify_local_invariance(e.type, job.trials, job.seed);
    ++cases[to_string(r.wall_case)];
    Json j = local_report_to_json(r);
    j.erase("trials");
    j["trials_passed"] = r.trials.size();
    walls.push_back(std::move(j));
  }
  Json out{{"genus", job.genus}, {"degree", degree_to_json(degree)}, {"walls", walls}, {"cases", cases}, {"ok", true}};
  emit(job, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count tropical curves through points and verify invariance across walls"};
  app.require_subcommand(1);
  Job job;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--genus", job.genus, "genus g (0 or 1)")->check(CLI::Range(0, 1));
    sub->add_option("--degree", job.degree,
                    "projective degree d, or JSON [{\"v\":[x,y],\"mult\":k},...] inline or in a file");
    sub->add_option("--max-codim", job.max_codim, "catalog codimension bound (default: 2 for #Delta <= 6, else 0)")
        ->check(CLI::Range(-1, 2));
    sub->add_option("--cache-dir", job.cache_dir, "directory for cached catalogs");
    sub->add_option("--out", job.out, "output file (default stdout)");
    sub->add_option("--seed", job.seed, "random seed");
  };
  auto* types = app.add_subcommand("types", "list the combinatorial types");
  auto* count = app.add_subcommand("count", "count curves through points");
  auto* invariance = app.add_subcommand("invariance", "count at many general configurations and compare");
  auto* wall = app.add_subcommand("wall", "check local invariance at every wall type in the catalog");
  auto* render = app.add_subcommand("render", "draw the counted curves as SVG");
  for (auto* sub : {types, count, invariance, wall, render}) add_common(sub);
  for (auto* sub : {count, render}) {
    sub->add_option("--points", job.points, "JSON list of [\"p/q\",\"p/q\"] pairs, inline or in a file");
    sub->add_option("--perturb", job.perturb, "perturb by up to this rational epsilon if not in general position");
  }
  for (auto* sub : {invariance, wall}) sub->add_option("--trials", job.trials, "number of trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  job.command = app.get_subcommands().front()->get_name();

  try {
    const Degree degree = parse_degree(job.degree);
    if (minimum_marks(degree, job.genus) < 1) throw Error(ErrorCode::InvalidInput, "need at least one marked point");
    if (job.command == "types") return run_types(job, degree);
    if (job.command == "count") return run_count(job, degree);
    if (job.command == "render") return run_render(job, degree);
    if (job.command == "invariance") return run_invariance(job, degree);
    if (job.command == "wall") return run_wall(job, degree);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::InvarianceViolation) return 2;
    if (e.code() == ErrorCode::NotGeneralPosition) return 3;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
