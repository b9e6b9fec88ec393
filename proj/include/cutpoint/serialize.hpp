#pragma once

#include <filesystem>

#include <json.hpp>

#include "cutpoint/convert.hpp"
#include "cutpoint/models.hpp"
#include "cutpoint/verify.hpp"
#include "cutpoint/witness.hpp"

namespace cutpoint {

using json = nlohmann::json;

// Machine documents: {"kind", "scalar_mode", "alphabet", "cutpoint",
// "payload"}. Rational scalars are "p/q" strings, float64 scalars JSON
// numbers, complex entries [re, im] pairs. Parsing validates the machine
// and rejects invariant violations with located messages; serialize/parse
// round-trips to the identical machine.
json machine_to_json(const Machine& m);
Machine machine_from_json(const json& doc);

Machine load_machine(const std::filesystem::path& path);
void save_machine(const Machine& m, const std::filesystem::path& path);

json trace_to_json(const ConversionTrace& trace, const Alphabet& alphabet);

json report_to_json(const AgreementReport& report, const Alphabet& alphabet);
json report_to_json(const ShatterReport& report);
json report_to_json(const ShatterInstance& inst);

}  // namespace cutpoint
