#pragma once

#include <string>
#include <optional>

#include <json.hpp>

#include "xvcs/existence.hpp"
#include "xvcs/scheme.hpp"

namespace xvcs {

// Scheme wire format. Bit strings are ASCII '0'/'1' with the first position
// leftmost; matrices are single row-major strings of t*m characters. Field
// order is fixed: n, m, k, qualified_rows, b0, b1, class.
nlohmann::ordered_json scheme_to_json(const LinearScheme& s, const SchemeClass& cls);

struct LoadedScheme {
    LinearScheme scheme;
    SchemeClass declared_class;
};
LoadedScheme scheme_from_json(const nlohmann::json& j);

// Either verdict may be absent with a refusal message (e.g. the exhaustive
// expansion-1 enumeration declines beyond its row cap).
nlohmann::ordered_json analyze_report(const AccessStructure& s,
                                      const std::vector<std::string>& warnings,
                                      const ExistenceVerdict* expansion1,
                                      const std::string& expansion1_refusal,
                                      const ExistenceVerdict* sxvcs,
                                      const std::string& sxvcs_refusal);

nlohmann::ordered_json contrast_to_json(const ContrastReport& r);

}  // namespace xvcs
