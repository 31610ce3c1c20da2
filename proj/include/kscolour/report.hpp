#pragma once

// JSON (and CSV) renderings of the result types. Key order is fixed so that
// identical results serialize to identical bytes.

#include <string>

#include <json.hpp>

#include "kscolour/colourings.hpp"
#include "kscolour/deficit.hpp"
#include "kscolour/ks_sets.hpp"
#include "kscolour/phenomenology.hpp"
#include "kscolour/precision.hpp"
#include "kscolour/rational.hpp"

namespace kscolour {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolVersion = "0.1.0";

/// A JSON integer when it fits in int64, otherwise its decimal string.
Json bigint_to_json(const BigInt& v);

Json to_json(const UnitVec& v);
/// [x, y, z, n]
Json to_json(const RationalRay& r);
Json to_json(const Surd& s);
Json to_json(const Ray& r);

Json to_json(const ColourabilityResult& r);
Json to_json(const DomainMeasure& m);
Json to_json(const ViolationReport& r);
Json to_json(const PhenoMap& map, bool include_grid = true);
/// Long-format rows "x,y,z,class" with a header line.
std::string pheno_csv(const PhenoMap& map);
Json to_json(const Theorem1Report& r);
Json to_json(const DensityProfile& p);
Json to_json(const DeficitReport& r);
Json to_json(const BoundsTable& t);
Json to_json(const PEstimate& e);
Json to_json(const KnowabilityReport& r);
/// Long-format rows "target,epsilon,trials,p_hat,lo,hi,minority_fraction".
std::string knowability_csv(const std::vector<KnowabilityReport>& reports);

}  // namespace kscolour
