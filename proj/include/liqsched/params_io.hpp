#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "liqsched/market_model.hpp"

namespace liqsched {

/// A market description as read from disk: the parameters plus the
/// confidence level (`p`, default 0.99).
struct MarketDocument {
  MarketParams params;
  RiskLevel risk;
};

/// Schema:
///   { "s0": [..N], "x0": [..N], "sigma": [[..N] x N], "gamma": [[..N] x N],
///     "eta": [..N], "p": 0.99 }
/// `sigma` and `gamma` are row-major arrays of rows. `p` is optional.
/// Throws ValidationError (DimensionError for shape mismatches) with the
/// offending key named in the message.
MarketDocument market_from_json(const nlohmann::json& doc);
nlohmann::json market_to_json(const MarketParams& params, const RiskLevel& risk);

MarketDocument load_market(const std::filesystem::path& path);

/// Reads a whole JSON file; ValidationError on I/O or parse failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace liqsched
