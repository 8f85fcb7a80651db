#pragma once

#include <json.hpp>

#include "cocyclelab/certify.hpp"
#include "cocyclelab/gallery.hpp"
#include "cocyclelab/holonomy.hpp"
#include "cocyclelab/lyapunov.hpp"
#include "cocyclelab/transfer.hpp"

namespace cocyclelab {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Schema-versioned report skeleton shared by all commands.
json report_skeleton(const std::string& command, const std::string& digest,
                     const json& parameters);
// Adds the wall-time field (the only non-deterministic part of a report).
void report_finalize(json& report, double wall_ms);

// Serialization with every float at 17 significant digits.
std::string dump_json_17(const json& j, int indent = 2);

json to_json(const Mat2& m);
json to_json(const ProjectiveArc& a);
json to_json(const SymbolSequence& x);
json to_json(const ExponentReport& r);
json to_json(const GapScanReport& r);
json to_json(const DominationReport& r);
json to_json(const BunchingReport& r);
json to_json(const HolderReport& r);
json to_json(const HolonomyResult& r);
json to_json(const UHVerdict& v);
json to_json(const TransferReport& r);
json to_json(const NotUhReport& r);
json to_json(const ConeStepReport& r);
json to_json(const ExponentBoundReport& r);
json to_json(const K0Scan& r);

// CSV with columns period,word,lambda_plus (floats at 17 digits).
std::string gap_scan_csv(const GapScanReport& r);

}  // namespace cocyclelab
