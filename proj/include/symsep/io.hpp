// StateFile (de)serialization and the JSON pieces shared by the CLI and
// the test drivers. One self-describing format covers pure states, product
// states and ensembles; complex numbers are stored as [re, im] pairs and
// amplitudes follow the party-1-slowest ordering of state.hpp.

#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "symsep/mixed.hpp"
#include "symsep/separability.hpp"
#include "symsep/state.hpp"
#include "symsep/symmetry.hpp"

namespace symsep::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

using StateValue = std::variant<PureState<double>, ProductState<double>, Ensemble<double>>;

struct StateFile {
  std::string kind;  // "pure" | "product" | "ensemble"
  StateValue value;
};

// Parse/serialize are inverse on canonically formatted text (the bytes this
// serializer produces).
StateFile parse_state_file(const std::string& text);
std::string serialize(const StateFile& file);

StateFile load_state_file(const std::string& path);
void save_state_file(const StateFile& file, const std::string& path);

Json state_to_json(const PureState<double>& psi);
Json state_to_json(const ProductState<double>& phi);
Json state_to_json(const Ensemble<double>& e);

// Report fragments.
Json bipartition_to_json(const Bipartition& cut);  // 1-based party labels
Json classification_to_json(const Classification<double>& c);
Json translation_to_json(const TranslationReport<double>& t);

}  // namespace symsep::io
