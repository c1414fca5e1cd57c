#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmtlab/errors.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab_cli/run.hpp"

namespace {

using gmt::cli::Command;

enum class Kind { Real, Integer, Text, Flag };

struct Option {
  const char* name;
  Kind kind;
  const char* help;
};

struct InputSlot {
  const char* name;
  std::size_t slot;
  const char* help;
};

struct Spec {
  Command command;
  const char* help;
  std::vector<InputSlot> inputs;
  std::vector<Option> options;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {Command::Generate, "Generate a point set (CSV plus metadata JSON)", {},
       {{"kind", Kind::Text, "cantor3|four_corner|random|planted|grid|dyadic_grid|uniform|segment|circle"},
        {"delta", Kind::Real, "target resolution"},
        {"s", Kind::Real, "dimension of a random set"},
        {"n", Kind::Integer, "number of points"},
        {"k", Kind::Integer, "points off the planted line"},
        {"m", Kind::Integer, "grid side"},
        {"level", Kind::Integer, "dyadic grid level"},
        {"radius", Kind::Real, "circle radius"},
        {"cx", Kind::Real, "circle centre x"},
        {"cy", Kind::Real, "circle centre y"},
        {"name", Kind::Text, "output file stem (default points)"}}},
      {Command::Dimension, "Box-counting dimension of a set", {{"input", 0, "points CSV"}},
       {{"level-min", Kind::Integer, "first regression level"},
        {"level-max", Kind::Integer, "last regression level"},
        {"s", Kind::Real, "also run the (delta, s, C)-set check"},
        {"c", Kind::Real, "constant for the check (default 16)"}}},
      {Command::Incidence, "Incidences with the spanned lines", {{"input", 0, "points CSV"}},
       {{"eps", Kind::Real, "epsilon of the reported bound"}}},
      {Command::Beck, "Beck dichotomy report", {{"input", 0, "points CSV"}},
       {{"c", Kind::Real, "dichotomy threshold"}}},
      {Command::Tubes, "Uniform tube family, or a thin-tubes audit of two sets",
       {{"mu", 0, "first measure's support CSV"}, {"nu", 1, "second measure's support CSV"}},
       {{"r", Kind::Real, "tube family scale"},
        {"sigma", Kind::Real, "audit exponent"},
        {"k", Kind::Real, "audit constant K"},
        {"c-mass", Kind::Real, "required witness mass"},
        {"shrink", Kind::Flag, "greedy witness shrinking"}}},
      {Command::Furstenberg, "Tube-union covering count", {{"input", 0, "optional base set CSV"}},
       {{"sigma", Kind::Real, "pencil dimension"},
        {"s", Kind::Real, "base set dimension (default 1)"},
        {"delta", Kind::Real, "resolution when generating the base set"}}},
      {Command::Project, "Radial projection profile", {{"x", 0, "centre set CSV"}, {"y", 1, "target set CSV (default X)"}},
       {{"target", Kind::Text, "kaufman|falconer"},
        {"x-sample", Kind::Integer, "number of sampled centres"},
        {"level-min", Kind::Integer, "first direction-counting level"},
        {"level-max", Kind::Integer, "last direction-counting level"}}},
      {Command::Ortho, "Exceptional directions of orthogonal projections", {{"input", 0, "points CSV"}},
       {{"sigma", Kind::Real, "dimension threshold"}}},
      {Command::AuditConstants, "Bootstrap constant schedule", {},
       {{"sigma", Kind::Real, "sigma"},
        {"s", Kind::Real, "s"},
        {"eps", Kind::Real, "epsilon (default 0.05)"},
        {"k", Kind::Real, "K (default 1)"},
        {"c", Kind::Real, "C (default 1)"},
        {"eps-f", Kind::Real, "epsilon of the improved Furstenberg bound"}}},
  };
  return all;
}

struct Values {
  std::map<std::string, double> reals;
  std::map<std::string, long long> integers;
  std::map<std::string, std::string> texts;
  std::map<std::string, bool> flags;
  std::map<std::size_t, std::string> inputs;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmtlab: discretised geometric measure theory experiments"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::string out = ".";
  std::size_t workers = 0;
  bool quiet = false;
  app.add_option("--seed", seed, "PRNG seed")->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  auto* workers_opt = app.add_option("--workers", workers, "worker cap (default: $GMTLAB_WORKERS or all cores)");
  app.add_flag("--quiet", quiet, "do not print the report");

  std::vector<std::pair<const Spec*, CLI::App*>> subs;
  std::map<const Spec*, Values> values;
  for (const Spec& spec : specs()) {
    CLI::App* sub = app.add_subcommand(gmt::cli::to_string(spec.command), spec.help);
    Values& v = values[&spec];
    for (const InputSlot& in : spec.inputs) {
      sub->add_option(std::string("--") + in.name, v.inputs[in.slot], in.help);
    }
    for (const Option& o : spec.options) {
      const std::string flag = std::string("--") + o.name;
      switch (o.kind) {
        case Kind::Real: sub->add_option(flag, v.reals[o.name], o.help); break;
        case Kind::Integer: sub->add_option(flag, v.integers[o.name], o.help); break;
        case Kind::Text: sub->add_option(flag, v.texts[o.name], o.help); break;
        case Kind::Flag: sub->add_flag(flag, v.flags[o.name], o.help); break;
      }
    }
    subs.emplace_back(&spec, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (workers_opt->count() == 0) {
      if (const char* env = std::getenv("GMTLAB_WORKERS")) {
        try {
          workers = static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
          gmt::fail(gmt::ErrorKind::ConfigInvalid, "GMTLAB_WORKERS must be a non-negative integer");
        }
      }
    }
    gmt::set_worker_count(workers);

    gmt::cli::RunConfig config;
    config.seed = seed;
    config.out_dir = out;
    for (const auto& [spec, sub] : subs) {
      if (!sub->parsed()) continue;
      config.command = spec->command;
      Values& v = values[spec];
      const auto given = [&](const char* name) { return sub->count(std::string("--") + name) > 0; };
      for (const Option& o : spec->options) {
        if (!given(o.name)) continue;
        switch (o.kind) {
          case Kind::Real: config.params[o.name] = v.reals[o.name]; break;
          case Kind::Integer: config.params[o.name] = v.integers[o.name]; break;
          case Kind::Text: config.params[o.name] = v.texts[o.name]; break;
          case Kind::Flag: config.params[o.name] = v.flags[o.name]; break;
        }
      }
      std::size_t slots = 0;
      for (const InputSlot& in : spec->inputs) {
        if (given(in.name)) slots = std::max(slots, in.slot + 1);
      }
      for (std::size_t i = 0; i < slots; ++i) {
        if (v.inputs[i].empty()) gmt::fail(gmt::ErrorKind::ConfigInvalid, "inputs must be given in order");
        config.inputs.emplace_back(v.inputs[i]);
      }
    }
    const gmt::cli::ReportEnvelope env = gmt::cli::run(config);
    if (!quiet) std::cout << env.to_json().dump(2) << "\n";
    for (const std::string& w : env.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gmt::cli::exit_code_for(e);
  }
}
