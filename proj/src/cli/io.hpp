#pragma once

// JSON ingestion and CSV/JSON emission for the command-line front end.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermocone/protocol/distribution.hpp"
#include "thermocone/protocol/sumset.hpp"
#include "thermocone/system.hpp"

namespace thermocone::cli {

using Json = nlohmann::json;

/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
Json load_json_arg(const std::string& text, const std::string& what);

HamiltonianSpec parse_hamiltonian(const Json& j);
QuantumState parse_state(const Json& j);
Macrostate parse_macro(const Json& j);
HermitianMatrix parse_matrix(const Json& j);
protocol::Distribution parse_distribution(const Json& j);
protocol::LevelSet parse_levels(const Json& j);

/// Value rounded to 12 significant digits; +-inf and NaN become strings.
Json number(double v);
std::string csv_number(double v);

/// Writes to `path` if non-empty, else to `out`.
void write_output(const std::string& text, const std::string& path, std::ostream& out);

std::string dump_json(const Json& j);
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

}  // namespace thermocone::cli
