#pragma once

// JSON schemas for categories, truncated (bi)simplicial sets, presentations
// and reports. Key order is fixed, so equal inputs give equal bytes.

#include <string>

#include <json.hpp>

#include "kderiv/checks.hpp"
#include "kderiv/derivator.hpp"
#include "kderiv/enrichment.hpp"
#include "kderiv/ktheory.hpp"

namespace kderiv {

using Json = nlohmann::ordered_json;

Json to_json(const FinCat& c);
Json to_json(const BaseObject& o);
Json to_json(const DiagramObject& f);
Json to_json(const TruncSSet& s);
Json to_json(const TruncBiSSet& b);
Json to_json(const GroupPresentation& p);
Json to_json(const AbelianInvariants& a);
Json to_json(const K0Result& r);
Json to_json(const InducedMap& m);
Json to_json(const ComparisonReport& r);
Json to_json(const AgreementReport& r);
Json to_json(const LConstructionReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const Verification& v);
Json to_json(const SuiteReport& r);

/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace kderiv
