// JSON serialization of certificates, reports and models.

#pragma once

#include "lawkit/finite_model.hpp"
#include "lawkit/kronecker.hpp"
#include "lawkit/kzero.hpp"
#include "lawkit/linearize.hpp"
#include "lawkit/rewrite.hpp"
#include "lawkit/theory.hpp"

#include <json.hpp>

namespace lawkit {

using Json = nlohmann::ordered_json;

Json to_json(const Term& t);
Json to_json(const FMor& f);
Json to_json(const Equation& e);
Json to_json(const Presentation& p);
Json to_json(const FiniteModel& m);
Json to_json(const K0Certificate& c);
Json to_json(const CyclicMap& m);
Json to_json(const AssemblyResult& r);
Json to_json(const PushforwardResult& r);
Json to_json(const CompletionResult& r);
Json to_json(const ConfluenceReport& r);
Json to_json(const BilinearReport& r);
Json to_json(const CommutativityReport& r);
Json to_json(const Derivation& d);
Json to_json(const TrivialRingResult& r);
Json to_json(const RingPresentation& r, const std::vector<std::string>& gen_names);
Json to_json(const RankIsoProof& p);
Json to_json(const AutGroupResult& r);

}  // namespace lawkit
