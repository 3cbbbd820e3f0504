// Self-contained validation suite behind the `check` subcommand: runs the
// closed-form and Fock-space oracles against the production solver and
// reports pass/fail per check as JSON.

#pragma once

#include <json.hpp>

namespace hbtk::tools {

// Every entry carries {name, pass, detail}; the top level adds an overall
// "pass" flag and a "notes" array for known documented discrepancies.
nlohmann::json run_checks();

}  // namespace hbtk::tools
