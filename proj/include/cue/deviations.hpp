#ifndef CUE_DEVIATIONS_HPP
#define CUE_DEVIATIONS_HPP

// Known disagreements between published closed forms and the oracles.

#include <filesystem>
#include <set>
#include <string>

namespace cue {

inline constexpr const char* kDiagPublishedForm = "diag-published-form";
inline constexpr const char* kDiagProofDisplay = "diag-proof-display";
inline constexpr const char* kDeltaRePublished = "delta-re-published";
inline constexpr const char* kDiagIntegerLimit = "diag-integer-limit";

struct DeviationLedger {
  std::set<std::string> ids;
  [[nodiscard]] bool documents(const std::string& id) const { return ids.contains(id); }
};

/// Path compiled in at build time (docs/deviations.json of the source tree).
std::filesystem::path default_deviations_path();

/// Reads {"deviations": [{"id": ...}, ...]}. IoError if unreadable,
/// std::runtime_error if malformed.
DeviationLedger load_deviations(const std::filesystem::path& path);

}  // namespace cue

#endif  // CUE_DEVIATIONS_HPP
