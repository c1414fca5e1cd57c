#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "gmtlab/covering.hpp"
#include "gmtlab/discrete_set.hpp"
#include "gmtlab/experiments.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/measures.hpp"
#include "gmtlab/schedule.hpp"
#include "gmtlab/tubes.hpp"

namespace gmt {

/// Writes `path` (header x,y) and the sidecar <stem>.json with label, delta, seed, generator,
/// params and the PRNG name. Coordinates use 17 significant digits, so a reload is exact.
void save_set(const DiscreteSet& set, const std::filesystem::path& path);
/// Reads a CSV written by save_set. Without a sidecar, delta is min(1, min separation) and the
/// provenance records the file. Throws ConfigInvalid on malformed input.
DiscreteSet load_set(const std::filesystem::path& path);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

// Tabular sidecars.
std::string per_scale_csv(const DimensionEstimate& d);
std::string profile_csv(const std::map<std::uint64_t, std::uint64_t>& profile);
std::string tube_family_csv(const TubeFamily& family);
std::string measure_csv(const WeightedMeasure& m);
std::string per_x_csv(const ExperimentResult& r);
void write_text(const std::string& text, const std::filesystem::path& path);

std::string format_double(double v);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const Line& l);
nlohmann::json to_json(const Tube& t);
nlohmann::json to_json(const Provenance& p);
nlohmann::json to_json(const DimensionEstimate& d);
nlohmann::json to_json(const DeltaSetCheck& c);
nlohmann::json to_json(const FrostmanFit& f);
nlohmann::json to_json(const MassShells& m);
nlohmann::json to_json(const IncidenceReport& r);
nlohmann::json to_json(const BeckReport& r);
nlohmann::json to_json(const WeakDirac& w);
nlohmann::json to_json(const ThinTubeAudit& a);
nlohmann::json to_json(const FuRenParams& p);
nlohmann::json to_json(const FuRenInstance& inst);
nlohmann::json to_json(const FuRenAudit& a);
nlohmann::json to_json(const Schedule& s);
nlohmann::json to_json(const ExperimentResult& r);
nlohmann::json to_json(const ErdosBeckProfile& p);
nlohmann::json to_json(const FurstenbergCount& f);
nlohmann::json to_json(const OrthoProfile& o);

// Inverses used by the round-trip formats.
FuRenInstance fu_ren_instance_from_json(const nlohmann::json& j);
ThinTubeAudit thin_tube_audit_from_json(const nlohmann::json& j);

}  // namespace gmt
