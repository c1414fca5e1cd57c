#include "gmtlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmtlab/errors.hpp"
#include "gmtlab/rng.hpp"

namespace gmt {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

fs::path sidecar_of(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ConfigInvalid, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(const std::string& field, const fs::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    while (used < field.size() && (field[used] == ' ' || field[used] == '\r')) ++used;
    if (used != field.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ConfigInvalid,
         path.string() + ":" + std::to_string(line) + ": not a number: " + field);
  }
}

json counts_json(const std::map<std::uint64_t, std::uint64_t>& m) {
  json out = json::array();
  for (const auto& [r, c] : m) out.push_back({{"r", r}, {"count", c}});
  return out;
}

json set_json(const DiscreteSet& s) {
  json pts = json::array();
  for (const Point& p : s.points()) pts.push_back({p.x, p.y});
  return {{"label", s.label()}, {"delta", s.delta()}, {"provenance", to_json(s.provenance())},
          {"points", std::move(pts)}};
}

DiscreteSet set_from_json(const json& j) {
  std::vector<Point> pts;
  for (const auto& p : j.at("points")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  Provenance prov;
  const json& pj = j.at("provenance");
  prov.generator = pj.at("generator").get<std::string>();
  prov.seed = pj.at("seed").get<std::uint64_t>();
  prov.params = pj.at("params");
  return DiscreteSet(std::move(pts), j.at("delta").get<double>(), j.at("label").get<std::string>(),
                     std::move(prov));
}

Tube tube_from_json(const json& j) {
  return Tube(Line::from_angle_offset(j.at("angle").get<double>(), j.at("offset").get<double>()),
              j.at("width").get<double>());
}

}  // namespace

void save_set(const DiscreteSet& set, const fs::path& path) {
  std::string out = "x,y\n";
  for (const Point& p : set.points()) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  write_text(out, path);
  json meta = {{"label", set.label()},
               {"delta", set.delta()},
               {"seed", set.provenance().seed},
               {"generator", set.provenance().generator},
               {"params", set.provenance().params},
               {"prng", std::string(Rng::kAlgorithm)}};
  write_json(meta, sidecar_of(path));
}

DiscreteSet load_set(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) fail(ErrorKind::ConfigInvalid, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y") fail(ErrorKind::ConfigInvalid, path.string() + ": header must be x,y");
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      fail(ErrorKind::ConfigInvalid, path.string() + ":" + std::to_string(lineno) + ": expected x,y");
    }
    pts.push_back({parse_double(line.substr(0, comma), path, lineno),
                   parse_double(line.substr(comma + 1), path, lineno)});
  }
  const fs::path meta_path = sidecar_of(path);
  if (fs::exists(meta_path)) {
    const json meta = read_json(meta_path);
    Provenance prov;
    prov.generator = meta.value("generator", std::string("supplied"));
    prov.seed = meta.value("seed", std::uint64_t{0});
    prov.params = meta.value("params", json::object());
    try {
      return DiscreteSet(std::move(pts), meta.at("delta").get<double>(),
                         meta.value("label", path.stem().string()), std::move(prov));
    } catch (const json::exception& e) {
      fail(ErrorKind::ConfigInvalid, meta_path.string() + ": " + e.what());
    }
  }
  Provenance prov;
  prov.params = {{"file", path.string()}};
  const double delta = std::min(1.0, min_separation(pts));
  return DiscreteSet(std::move(pts), delta, path.stem().string(), std::move(prov));
}

void write_text(const std::string& text, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::ConfigInvalid, "cannot write " + path.string());
  out << text;
}

void write_json(const json& j, const fs::path& path) { write_text(j.dump(2) + "\n", path); }

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
}

std::string per_scale_csv(const DimensionEstimate& d) {
  std::string out = "level,count\n";
  for (const auto& [l, c] : d.per_scale_counts) out += std::to_string(l) + "," + std::to_string(c) + "\n";
  return out;
}

std::string profile_csv(const std::map<std::uint64_t, std::uint64_t>& profile) {
  std::string out = "r,count\n";
  for (const auto& [r, c] : profile) out += std::to_string(r) + "," + std::to_string(c) + "\n";
  return out;
}

std::string tube_family_csv(const TubeFamily& family) {
  std::string out = "angle,anchor_x,anchor_y,width\n";
  for (const Tube& t : family.tubes) {
    const Point a = t.axis().anchor();
    out += format_double(t.axis().angle()) + "," + format_double(a.x) + "," + format_double(a.y) +
           "," + format_double(t.width()) + "\n";
  }
  return out;
}

std::string measure_csv(const WeightedMeasure& m) {
  std::string out = "x,y,w\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Point p = m.support()[i];
    out += format_double(p.x) + "," + format_double(p.y) + "," + format_double(m.weights()[i]) + "\n";
  }
  return out;
}

std::string per_x_csv(const ExperimentResult& r) {
  std::string out = "x,y,slope\n";
  for (const PerCenter& c : r.per_x_table) {
    out += format_double(c.x.x) + "," + format_double(c.x.y) + "," + format_double(c.slope) + "\n";
  }
  return out;
}

json to_json(const Point& p) { return {{"x", p.x}, {"y", p.y}}; }

json to_json(const Line& l) { return {{"angle", l.angle()}, {"offset", l.offset()}}; }

json to_json(const Tube& t) {
  return {{"angle", t.axis().angle()}, {"offset", t.axis().offset()}, {"width", t.width()}};
}

json to_json(const Provenance& p) {
  return {{"generator", p.generator}, {"seed", p.seed}, {"params", p.params}};
}

json to_json(const DimensionEstimate& d) {
  json counts = json::array();
  for (const auto& [l, c] : d.per_scale_counts) counts.push_back({{"level", l}, {"count", c}});
  return {{"slope", d.slope},         {"intercept", d.intercept}, {"level_min", d.level_min},
          {"level_max", d.level_max}, {"r_squared", d.r_squared}, {"per_scale_counts", counts}};
}

json to_json(const DeltaSetCheck& c) {
  return {{"pass", c.pass},
          {"worst_ratio", c.worst_ratio},
          {"witness_center", to_json(c.witness_center)},
          {"witness_level", c.witness_level}};
}

json to_json(const FrostmanFit& f) {
  json levels = json::array();
  for (const auto& [l, m] : f.max_mass_per_level) levels.push_back({{"level", l}, {"max_mass", m}});
  return {{"exponent", f.exponent},
          {"constant", f.constant},
          {"witness_center", to_json(f.witness_center)},
          {"witness_radius", f.witness_radius},
          {"max_mass_per_level", levels}};
}

json to_json(const MassShells& m) {
  json shells = json::object();
  for (const auto& [j, idx] : m.shells) shells[std::to_string(j)] = idx;
  return {{"shells", shells},     {"tail", m.tail},         {"tail_from", m.tail_from},
          {"radius", m.radius},   {"constant", m.constant}, {"exponent", m.exponent}};
}

json to_json(const IncidenceReport& r) {
  return {{"incidence_count", r.incidence_count},
          {"points", r.points},
          {"lines", r.lines},
          {"cs_bound", r.cs_bound},
          {"eps", r.eps},
          {"eps_bound", r.eps_bound},
          {"rich_profile", counts_json(r.rich_profile)}};
}

json to_json(const BeckReport& r) {
  json j = {{"points", r.points},
            {"max_collinear", r.max_collinear},
            {"spanned_line_count", r.spanned_line_count},
            {"connected_pair_profile", counts_json(r.connected_pair_profile)},
            {"rich_profile", counts_json(r.rich_profile)},
            {"verdict", to_string(r.verdict)},
            {"c_threshold", r.c_threshold},
            {"exact", r.exact}};
  j["erdos_beck_ratio"] = r.erdos_beck_ratio ? json(*r.erdos_beck_ratio) : json(nullptr);
  return j;
}

json to_json(const WeakDirac& w) {
  return {{"index", w.index}, {"best_point", to_json(w.best_point)}, {"lines_through", w.lines_through}};
}

json to_json(const ThinTubeAudit& a) {
  json pairs = json::array();
  for (const auto& [i, k] : a.excluded_pairs) pairs.push_back({i, k});
  return {{"sigma", a.sigma},
          {"k_constant", a.k_constant},
          {"c_mass", a.c_mass},
          {"pass", a.pass},
          {"worst_tube", a.worst_tube ? to_json(*a.worst_tube) : json(nullptr)},
          {"worst_ratio", a.worst_ratio},
          {"witness_x", to_json(a.witness_x)},
          {"worst_width", a.worst_width},
          {"excluded_pairs", pairs}};
}

ThinTubeAudit thin_tube_audit_from_json(const json& j) {
  ThinTubeAudit a;
  a.sigma = j.at("sigma").get<double>();
  a.k_constant = j.at("k_constant").get<double>();
  a.c_mass = j.at("c_mass").get<double>();
  a.pass = j.at("pass").get<bool>();
  if (!j.at("worst_tube").is_null()) a.worst_tube = tube_from_json(j.at("worst_tube"));
  a.worst_ratio = j.at("worst_ratio").get<double>();
  a.witness_x = {j.at("witness_x").at("x").get<double>(), j.at("witness_x").at("y").get<double>()};
  a.worst_width = j.at("worst_width").get<double>();
  for (const auto& p : j.at("excluded_pairs")) {
    a.excluded_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  }
  return a;
}

json to_json(const FuRenParams& p) {
  return {{"r", p.r}, {"s", p.s}, {"t", p.t}, {"sigma", p.sigma}, {"eta", p.eta}, {"zeta", p.zeta}};
}

json to_json(const FuRenInstance& inst) {
  json tubes = json::object();
  for (const auto& [i, fam] : inst.tube_map) {
    json list = json::array();
    for (const Tube& t : fam.tubes) list.push_back(to_json(t));
    tubes[std::to_string(i)] = {
        {"width", fam.width}, {"direction_net_step", fam.direction_net_step}, {"tubes", list}};
  }
  return {{"p_x", set_json(inst.p_x)},
          {"p_y", set_json(inst.p_y)},
          {"tube_map", tubes},
          {"params", to_json(inst.params)}};
}

FuRenInstance fu_ren_instance_from_json(const json& j) {
  try {
    const json& pj = j.at("params");
    FuRenParams params{pj.at("r").get<double>(),     pj.at("s").get<double>(),
                       pj.at("t").get<double>(),     pj.at("sigma").get<double>(),
                       pj.at("eta").get<double>(),   pj.at("zeta").get<double>()};
    std::map<std::size_t, TubeFamily> tube_map;
    for (const auto& [key, fj] : j.at("tube_map").items()) {
      TubeFamily fam;
      fam.width = fj.at("width").get<double>();
      fam.direction_net_step = fj.at("direction_net_step").get<double>();
      for (const auto& t : fj.at("tubes")) fam.tubes.push_back(tube_from_json(t));
      tube_map.emplace(std::stoull(key), std::move(fam));
    }
    return FuRenInstance{set_from_json(j.at("p_x")), set_from_json(j.at("p_y")), std::move(tube_map),
                         params};
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigInvalid, std::string("bad instance: ") + e.what());
  }
}

json to_json(const FuRenAudit& a) {
  return {{"hypotheses_met", a.hypotheses_met},
          {"implied_bound", a.implied_bound},
          {"observed_sigma", a.observed_sigma},
          {"consistent", a.consistent},
          {"failures", a.failures}};
}

json to_json(const Schedule& s) {
  return {{"eta", s.eta},         {"kappa", s.kappa},         {"r0", s.r0},
          {"r1", s.r1},           {"r2", s.r2},               {"k_prime", s.k_prime},
          {"log2_r0", s.log2_r0}, {"log2_r1", s.log2_r1},     {"log2_r2", s.log2_r2},
          {"log2_k_prime", s.log2_k_prime}};
}

json to_json(const ExperimentResult& r) {
  json table = json::array();
  for (const PerCenter& c : r.per_x_table) {
    table.push_back({{"x", c.x.x}, {"y", c.x.y}, {"slope", c.slope}, {"leaked_mass", c.leaked_mass}});
  }
  return {{"best_x", to_json(r.best_x)},
          {"best_dimension", to_json(r.best_dimension)},
          {"predicted_lower_bound", r.predicted_lower_bound},
          {"margin", r.margin},
          {"dim_x", r.dim_x},
          {"dim_y", r.dim_y},
          {"per_x_table", table}};
}

json to_json(const ErdosBeckProfile& p) {
  return {{"predicted", p.predicted},
          {"measured", p.measured},
          {"t_achieved", p.t_achieved},
          {"dim_x", p.dim_x},
          {"hypothesis_holds", p.hypothesis_holds},
          {"worst_line", p.worst_line ? to_json(*p.worst_line) : json(nullptr)}};
}

json to_json(const FurstenbergCount& f) {
  return {{"count", f.count},
          {"wolff_floor", f.wolff_floor},
          {"ratio", f.ratio},
          {"points", f.points},
          {"tubes", f.tubes},
          {"x_constant", f.x_constant},
          {"x_hypothesis_met", f.x_hypothesis_met},
          {"pencil_worst_ratio", f.pencil_worst_ratio},
          {"pencils_met", f.pencils_met},
          {"dual_line_count", f.dual_line_count},
          {"dual_point_count", f.dual_point_count},
          {"duality_consistent", f.duality_consistent}};
}

json to_json(const OrthoProfile& o) {
  return {{"exceptional_directions", o.exceptional_directions},
          {"measured_dim", o.measured_dim},
          {"net_size", o.net_size},
          {"level_min", o.level_min},
          {"level_max", o.level_max},
          {"min_projected_dim", o.min_projected_dim}};
}

}  // namespace gmt
