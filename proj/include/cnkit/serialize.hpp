#pragma once

#include <json.hpp>

#include "cnkit/descent.hpp"

namespace cnkit {

// All big integers serialize as decimal strings so 53-bit JSON consumers
// keep them intact.
nlohmann::json int_json(const Int& v);
nlohmann::json rat_json(const Rat& q);  // {"num": "...", "den": "..."}

nlohmann::json witness_json(const Quadruple& q);
nlohmann::json class_entry_json(const ClassEntry& e);
nlohmann::json certificate_json(const DescentCertificate& cert);
nlohmann::json cascade_state_json(const CascadeState& st);
nlohmann::json outcome_json(const SearchOutcome& o, long height);

// Seed-witness lists consumed by `descent --seeds`:
// [{"side": "E"|"Ebar", "b1": "...", "n": "...", "e": "...", "m": "..."}, ...]
std::vector<SeedWitness> seed_witnesses_from_json(const nlohmann::json& j);

}  // namespace cnkit
