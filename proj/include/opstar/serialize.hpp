#pragma once

#include "opstar/preserver.hpp"
#include "opstar/semigroup.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace opstar {

using Json = nlohmann::json;

/// Element <-> {"dims":[n1,...],"blocks":[[ [re,im] entry rows ]...]},
/// row-major within each block.
Json element_to_json(const Element& a);
Element element_from_json(const Json& j);

/// SuperOp <-> {"dom_dims":[...],"cod_dims":[...],"matrix":[[ [re,im] ...]...]},
/// row-major over the column-stacked coordinates.
Json superop_to_json(const SuperOp& t);
SuperOp superop_from_json(const Json& j);

/// {"h":Element,"r":Element,"S":SuperOp,"residuals":{name:value},"verdict":bool}
Json decomposition_to_json(const Decomposition& dec);

/// {"times":[...],"records":[{"t","h","r","S","verdict"}...],"residuals":{...}}
Json scan_to_json(const SemigroupScan& sc, const ResidualMap& check_residuals);

Json property_report_to_json(const PropertyReport& rep);
Json pedersen_to_json(const PedersenReport& rep);
Json box_record_to_json(const BoxExampleRecord& rec);

/// File IO; throws std::invalid_argument with a readable message on parse or
/// validation failure.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace opstar
