#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlip/duals.hpp"
#include "rlip/subaffine.hpp"
#include "rlip/verify.hpp"

namespace rlip {

/// Tag carried by every top-level JSON document.
inline constexpr const char* kSchema = "rlip/1";

nlohmann::json value_json(const ExtendedValue& v);
nlohmann::json vec_json(const Vec& v);

nlohmann::json to_json(const PrimalOutcome& p);
nlohmann::json to_json(const Instance& inst, const DualOutcome& d);
nlohmann::json to_json(const DiagramReport& d);
nlohmann::json to_json(const ConvexityVerdict& v);
nlohmann::json to_json(const Containment& c);
nlohmann::json to_json(const TheoremReport& r);
nlohmann::json to_json(const FarkasReport& r);
nlohmann::json to_json(const SlaterReport& r);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const SADualOutcome& d);

/// Wraps a payload as {"schema": ..., "kind": kind, kind: payload}.
nlohmann::json document(const std::string& kind, nlohmann::json payload);

std::string render_primal(const PrimalOutcome& p);
std::string render_duals(const Instance& inst, const std::vector<DualOutcome>& rows, const PrimalOutcome& primal);
std::string render_certificate(const Instance& inst, const DualCertificate& cert);
std::string render_verdict(const ConvexityVerdict& v);
std::string render_theorem(const TheoremReport& r);
std::string render_farkas(const FarkasReport& r);
std::string render_slater(const SlaterReport& r);
std::string render_hypotheses(const HypothesisReport& r);
std::string render_diagram(const DiagramReport& d);

struct DossierOptions {
  std::size_t objectives = 4;
  std::size_t theorem_samples = 16;
  Caps caps;
};

/// Markdown dossier: cones and verdicts, all duals on sampled objectives
/// with the diagram, theorem checks, Slater conditions and hypotheses.
std::string dossier_markdown(const Instance& inst, const DossierOptions& opts = {});

}  // namespace rlip
