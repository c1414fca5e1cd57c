#include "gmtlab_cli/run.hpp"

#include <chrono>
#include <cmath>

#include "gmtlab/covering.hpp"
#include "gmtlab/errors.hpp"
#include "gmtlab/experiments.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/io.hpp"
#include "gmtlab/measures.hpp"
#include "gmtlab/schedule.hpp"
#include "gmtlab/tubes.hpp"

namespace gmt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::pair<Command, const char*> kNames[] = {
    {Command::Generate, "generate"},       {Command::Dimension, "dimension"},
    {Command::Incidence, "incidence"},     {Command::Beck, "beck"},
    {Command::Tubes, "tubes"},             {Command::Furstenberg, "furstenberg"},
    {Command::Project, "project"},         {Command::Ortho, "ortho"},
    {Command::AuditConstants, "audit-constants"},
};

struct Context {
  const RunConfig& config;
  ReportEnvelope& env;

  template <class T>
  T param(const char* key, T fallback) const {
    const auto it = config.params.find(key);
    if (it == config.params.end() || it->is_null()) return fallback;
    try {
      return it->get<T>();
    } catch (const json::exception&) {
      fail(ErrorKind::ConfigInvalid, std::string("bad value for --") + key);
    }
  }
  template <class T>
  T need(const char* key) const {
    const auto it = config.params.find(key);
    if (it == config.params.end() || it->is_null()) fail(ErrorKind::ConfigInvalid, std::string("--") + key + " is required");
    return param<T>(key, T{});
  }
  const fs::path& input(std::size_t i, const char* what) const {
    if (config.inputs.size() <= i) fail(ErrorKind::ConfigInvalid, std::string("missing input: ") + what);
    return config.inputs[i];
  }
  DiscreteSet load(std::size_t i, const char* what) {
    DiscreteSet s = load_set(input(i, what));
    env.provenance.push_back({{"input", input(i, what).string()}, {"label", s.label()},
                              {"delta", s.delta()}, {"set", to_json(s.provenance())}});
    return s;
  }
  void csv(const std::string& name, const std::string& text) {
    write_text(text, config.out_dir / name);
    env.files.push_back(name);
  }
};

DiscreteSet generate_set(Context& ctx) {
  const auto kind = ctx.need<std::string>("kind");
  const auto seed = ctx.config.seed;
  if (kind == "cantor3") return gen_ifs(cantor3(), ctx.need<double>("delta"));
  if (kind == "four_corner") return gen_ifs(four_corner(), ctx.need<double>("delta"));
  if (kind == "random") return gen_random_delta_s_set(ctx.need<double>("s"), ctx.need<double>("delta"), seed);
  if (kind == "planted") return gen_planted_collinear(ctx.need<std::size_t>("n"), ctx.need<std::size_t>("k"), seed);
  if (kind == "grid") return gen_grid(ctx.need<std::size_t>("m"));
  if (kind == "dyadic_grid") return gen_dyadic_grid(ctx.need<int>("level"));
  if (kind == "uniform") return gen_uniform(ctx.need<std::size_t>("n"), seed);
  if (kind == "segment") return gen_segment(ctx.need<std::size_t>("n"));
  if (kind == "circle") {
    return gen_circle(ctx.need<std::size_t>("n"), {ctx.param("cx", 0.0), ctx.param("cy", 0.0)},
                      ctx.param("radius", 1.0));
  }
  fail(ErrorKind::ConfigInvalid, "unknown --kind " + kind);
}

json cmd_generate(Context& ctx) {
  const DiscreteSet s = generate_set(ctx);
  const std::string name = ctx.param<std::string>("name", "points");
  save_set(s, ctx.config.out_dir / (name + ".csv"));
  ctx.env.files.push_back(name + ".csv");
  ctx.env.files.push_back(name + ".json");
  ctx.env.provenance.push_back(to_json(s.provenance()));
  return {{"label", s.label()}, {"points", s.size()}, {"delta", s.delta()}};
}

std::pair<int, int> levels(Context& ctx, double delta) {
  auto [lo, hi] = default_levels(delta);
  return {ctx.param("level-min", lo), ctx.param("level-max", hi)};
}

json cmd_dimension(Context& ctx) {
  const DiscreteSet s = ctx.load(0, "--input");
  const auto [lo, hi] = levels(ctx, s.delta());
  const DimensionEstimate d = box_dimension(s, lo, hi);
  ctx.csv("per_scale_counts.csv", per_scale_csv(d));
  if (d.r_squared < 0.95) ctx.env.warnings.push_back("regression r^2 below 0.95");
  json out = to_json(d);
  if (ctx.config.params.contains("s")) out["delta_set_check"] = to_json(verify_delta_s_set(s, ctx.need<double>("s"), ctx.param("c", 16.0)));
  return out;
}

json cmd_incidence(Context& ctx) {
  const DiscreteSet s = ctx.load(0, "--input");
  const LineSet lines = spanned_lines(s);
  const IncidenceReport r = incidence_count(s, lines, ctx.param("eps", 0.1));
  ctx.csv("rich_profile.csv", profile_csv(r.rich_profile));
  json out = to_json(r);
  out["exact"] = lines.is_exact();
  if (!lines.is_exact()) ctx.env.warnings.push_back("points are not on a small common lattice; float tolerance 1e-9 used");
  return out;
}

json cmd_beck(Context& ctx) {
  const DiscreteSet s = ctx.load(0, "--input");
  const BeckReport r = beck_analyze(s, ctx.param("c", kDefaultBeckThreshold));
  ctx.csv("connected_pair_profile.csv", profile_csv(r.connected_pair_profile));
  ctx.csv("rich_profile.csv", profile_csv(r.rich_profile));
  if (!r.exact) ctx.env.warnings.push_back("float collinearity mode; pair partition not cross-checked");
  return to_json(r);
}

json cmd_tubes(Context& ctx) {
  if (ctx.config.inputs.size() >= 2) {
    const auto mu = WeightedMeasure::uniform(ctx.load(0, "--mu"));
    const auto nu = WeightedMeasure::uniform(ctx.load(1, "--nu"));
    ThinTubeOptions opt;
    opt.shrink_witness = ctx.param("shrink", false);
    const ThinTubeAudit a = thin_tube_audit(mu, nu, ctx.need<double>("sigma"), ctx.param("k", 1.0),
                                            ctx.param("c-mass", 1.0), opt);
    return to_json(a);
  }
  const TubeFamily fam = uniform_tube_family(ctx.need<double>("r"));
  ctx.csv("tube_family.csv", tube_family_csv(fam));
  return {{"width", fam.width}, {"direction_net_step", fam.direction_net_step}, {"size", fam.tubes.size()}};
}

json cmd_furstenberg(Context& ctx) {
  const double sigma = ctx.need<double>("sigma");
  const double s = ctx.param("s", 1.0);
  const FurstenbergCount f = ctx.config.inputs.empty()
                                 ? furstenberg_count(sigma, s, ctx.need<double>("delta"), ctx.config.seed)
                                 : furstenberg_count(ctx.load(0, "--input"), sigma, s, ctx.config.seed);
  if (!f.x_hypothesis_met) ctx.env.warnings.push_back("base set exceeds the delta^-eps0 constant");
  if (!f.pencils_met) ctx.env.warnings.push_back("some pencil is not a (delta, sigma, 16)-set of tubes");
  return to_json(f);
}

Target target_from(const std::string& name) {
  if (name == "kaufman") return Target::Kaufman;
  if (name == "falconer") return Target::Falconer;
  fail(ErrorKind::ConfigInvalid, "--target must be kaufman or falconer");
}

json cmd_project(Context& ctx) {
  DiscreteSet x = ctx.load(0, "--x");
  DiscreteSet y = ctx.config.inputs.size() >= 2 ? ctx.load(1, "--y") : x;
  ExperimentSpec spec{std::move(x), std::move(y), ctx.param<std::size_t>("x-sample", kDefaultXSample),
                      std::nullopt, target_from(ctx.param<std::string>("target", "kaufman"))};
  if (ctx.config.params.contains("level-min") || ctx.config.params.contains("level-max")) {
    const auto [lo, hi] = levels(ctx, spec.y_set.delta());
    spec.scale_levels = std::pair{lo, hi};
  }
  const ExperimentResult r = radial_dimension_profile(spec);
  ctx.csv("per_x_table.csv", per_x_csv(r));
  double leak = 0.0;
  for (const PerCenter& c : r.per_x_table) leak = std::max(leak, c.leaked_mass);
  if (leak > 0.0) ctx.env.warnings.push_back("leaked mass up to " + format_double(leak) + " near sampled centres");
  if (r.margin < 0.0) ctx.env.warnings.push_back("slack consumed: margin " + format_double(r.margin));
  return to_json(r);
}

json cmd_ortho(Context& ctx) {
  const OrthoProfile o = orthogonal_exceptional_profile(ctx.load(0, "--input"), ctx.need<double>("sigma"));
  std::string text = "angle\n";
  for (double a : o.exceptional_directions) text += format_double(a) + "\n";
  ctx.csv("exceptional_directions.csv", text);
  return to_json(o);
}

json cmd_audit_constants(Context& ctx) {
  ScheduleInput in;
  in.sigma = ctx.need<double>("sigma");
  in.s = ctx.need<double>("s");
  in.eps = ctx.param("eps", in.eps);
  in.k_constant = ctx.param("k", in.k_constant);
  in.c_constant = ctx.param("c", in.c_constant);
  if (ctx.config.params.contains("eps-f")) in.furstenberg_eps = ctx.need<double>("eps-f");
  const Schedule s = bootstrap_schedule(in);
  if (s.r0 == 0.0 || std::isinf(s.k_prime)) ctx.env.warnings.push_back("scales beyond double range; see log2_* fields");
  return to_json(s);
}

// Replaces non-finite values, which JSON cannot carry, by null.
void scrub(json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    j = nullptr;
  } else if (j.is_structured()) {
    for (auto& v : j) scrub(v);
  }
}

}  // namespace

const char* to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kNames) {
    if (cmd == c) return name;
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  for (const auto& [cmd, n] : kNames) {
    if (name == n) return cmd;
  }
  fail(ErrorKind::ConfigInvalid, "unknown command " + name);
}

json ReportEnvelope::to_json() const {
  return {{"schema_version", schema_version}, {"command", command}, {"config", config},
          {"timing", {{"elapsed_ms", elapsed_ms}}}, {"payload", payload},
          {"warnings", warnings}, {"provenance", provenance}, {"files", files}};
}

ReportEnvelope run(const RunConfig& config) {
  ReportEnvelope env;
  env.command = to_string(config.command);
  json inputs = json::array();
  for (const auto& p : config.inputs) inputs.push_back(p.string());
  env.config = {{"command", env.command}, {"seed", config.seed}, {"inputs", inputs},
                {"out", config.out_dir.string()}, {"params", config.params}};
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir)) {
    fail(ErrorKind::ConfigInvalid, "output directory not writable: " + config.out_dir.string());
  }
  Context ctx{config, env};
  const auto start = std::chrono::steady_clock::now();
  switch (config.command) {
    case Command::Generate: env.payload = cmd_generate(ctx); break;
    case Command::Dimension: env.payload = cmd_dimension(ctx); break;
    case Command::Incidence: env.payload = cmd_incidence(ctx); break;
    case Command::Beck: env.payload = cmd_beck(ctx); break;
    case Command::Tubes: env.payload = cmd_tubes(ctx); break;
    case Command::Furstenberg: env.payload = cmd_furstenberg(ctx); break;
    case Command::Project: env.payload = cmd_project(ctx); break;
    case Command::Ortho: env.payload = cmd_ortho(ctx); break;
    case Command::AuditConstants: env.payload = cmd_audit_constants(ctx); break;
  }
  env.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  scrub(env.payload);
  write_json(env.to_json(), config.out_dir / "report.json");
  return env;
}

int exit_code_for(const std::exception& e) noexcept {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return err->kind() == ErrorKind::InvariantViolation ? 3 : 2;
  }
  // Unreadable files and malformed JSON are caller-side too.
  if (dynamic_cast<const fs::filesystem_error*>(&e) || dynamic_cast<const json::exception*>(&e)) return 2;
  return 3;
}

}  // namespace gmt::cli
