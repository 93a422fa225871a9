#include "cue/deviations.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "cue/errors.hpp"

namespace cue {

std::filesystem::path default_deviations_path() { return CUE_SFF_DEFAULT_DEVIATIONS; }

DeviationLedger load_deviations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read deviations file " + path.string());
  DeviationLedger ledger;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& d : doc.at("deviations")) ledger.ids.insert(d.at("id").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed deviations file " + path.string() + ": " + e.what());
  }
  return ledger;
}

}  // namespace cue
