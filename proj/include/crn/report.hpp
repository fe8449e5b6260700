#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/ltc.hpp"
#include "crn/network.hpp"
#include "crn/sccred.hpp"
#include "crn/tfpv.hpp"

namespace crn {

using Json = nlohmann::ordered_json;

Json rvec_json(const RVec& v);
Json network_json(const ReactionNetwork& net);
Json structure_json(const StructureSummary& s);
Json certificate_json(const TfpvCertificate& cert);
Json precheck_json(const PrecheckResult& r);
Json point_verification_json(const PointVerification& v);
Json ltc_json(const LtcResult& r, const ReactionNetwork& net);
Json integral_links_json(const IntegralLinkResult& r, const ReactionNetwork& net);
Json slow_fast_json(const SlowFastSystem& sys, const ReactionNetwork& net);
Json near_tfpv_json(const NearTfpvResult& r);

/// Assembles the stable report shape: network, command, summary,
/// certificates, warnings.
Json make_report(const ReactionNetwork& net, const std::string& command, Json options,
                 Json summary, Json certificates, const std::vector<std::string>& warnings);

/// Canonical serialization: 2-space indent, trailing newline; byte-stable
/// for identical inputs.
std::string emit_report(const Json& report);

}  // namespace crn
