#pragma once

// JSON forms of the library's reports. Schemas live in schemas/.

#include "json.hpp"
#include "qrand/channel.hpp"
#include "qrand/smallbias.hpp"
#include "qrand/verify.hpp"

namespace qrand {

nlohmann::json to_json(const BiasReport& report);
nlohmann::json to_json(const VaziraniReport& report);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const AttackReport& report);
nlohmann::json to_json(const DiagnosticsReport& report);

/// [[re, im], ...]
nlohmann::json state_to_json(const StateVector& psi);

}  // namespace qrand
