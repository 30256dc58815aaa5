#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simon/hsp.hpp"
#include "simon/recovery.hpp"
#include "simon/sieve.hpp"

namespace simon::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kResultSchema = "simon.result/1";
inline constexpr const char* kManifestSchema = "simon.manifest/1";
inline constexpr const char* kTelemetrySchema = "simon.telemetry/1";

/// A base group plus the text it was built from ("S3" or "file:<path>").
struct LoadedGroup {
  GroupSpec spec;
  std::shared_ptr<const GroupTable> table;
  std::string description;
};
LoadedGroup load_group(const std::string& name, const std::string& file);

/// "trivial", or n comma-separated element names or indices.
std::vector<int> parse_hidden(const GroupTable& g, const std::string& text, int n);

/// The first involution that has a one-dimensional character with value -1.
int default_mu(const IrrepCatalog& cat);

Json instance_json(const HSPInstance& inst, const std::string& group_description);
/// Inverse of instance_json; builds group, catalog and CG cache.
HSPInstance instance_from_json(const Json& j);

Json label_json(const ProductLabel& l);
Json complex_json(Complex c);

Json catalog_json(const IrrepCatalog& cat, bool with_matrices);
Json cg_table_json(const IrrepCatalog& cat);
Json weak_distribution_json(const WeakDistribution& d);
Json sieve_config_json(const SieveConfig& c);
Json sieve_result_json(const SieveResult& r, int trial);
Json combine_event_json(const CombineEvent& e, int trial);
Json recovery_json(const RecoveryReport& r, const GroupTable& g);

std::string fnv1a64_hex(std::string_view bytes);
/// Pretty JSON with a trailing newline; byte-stable for identical inputs.
std::string dump(const Json& j);

}  // namespace simon::io
