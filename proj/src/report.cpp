#include "crn/report.hpp"

namespace crn {

Json rvec_json(const RVec& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
    return out;
}

Json network_json(const ReactionNetwork& net) {
    Json out;
    out["name"] = net.name();
    out["species"] = net.species();
    Json complexes = Json::array();
    for (Index j = 0; j < net.complex_count(); ++j)
        complexes.push_back(net.complex_text(static_cast<int>(j)));
    out["complexes"] = complexes;
    Json reactions = Json::array();
    for (const auto& r : net.reactions()) {
        Json jr;
        jr["reactant"] = net.complex_text(r.reactant);
        jr["product"] = net.complex_text(r.product);
        jr["label"] = r.label;
        reactions.push_back(jr);
    }
    out["reactions"] = reactions;
    if (!net.rate_values().empty()) {
        Json rates = Json::object();
        for (const auto& [label, value] : net.rate_values()) rates[label] = value.str();
        out["rate_values"] = rates;
    }
    return out;
}

Json structure_json(const StructureSummary& s) {
    Json out;
    out["n"] = s.n;
    out["m"] = s.m;
    out["d"] = s.d;
    out["d_star"] = s.d_star;
    out["components"] = s.components;
    out["terminal_sccs"] = s.terminal_sccs;
    out["weakly_reversible"] = s.weakly_reversible;
    out["rank_N"] = s.rank_N;
    out["codimension"] = s.codimension;
    out["deficiency"] = s.deficiency;
    out["one_terminal_per_component"] = s.one_terminal_per_component;
    out["zero_complex_present"] = s.zero_complex_present;
    out["zero_in_terminal"] = s.zero_in_terminal;
    out["component_members"] = s.component_members;
    out["terminal_members"] = s.terminal_members;
    return out;
}

Json certificate_json(const TfpvCertificate& cert) {
    Json out;
    Json off = Json::array();
    for (int j : cert.off_set) off.push_back(j + 1);  // 1-based in reports
    out["off_reactions"] = off;
    out["off_labels"] = cert.off_labels;
    out["dimension"] = cert.dimension;
    out["justification"] = justification_name(cert.justification);
    if (cert.cb_verified.has_value())
        out["cb_verified"] = *cert.cb_verified;
    else
        out["cb_verified"] = nullptr;
    Json sub;
    sub["components"] = cert.sub_summary.components;
    sub["terminal_sccs"] = cert.sub_summary.terminal_sccs;
    sub["deficiency"] = cert.sub_summary.deficiency;
    sub["codimension"] = cert.sub_summary.codimension;
    sub["component_members"] = cert.sub_summary.component_members;
    out["subnetwork"] = sub;
    return out;
}

Json precheck_json(const PrecheckResult& r) {
    Json out;
    out["verdict"] = verdict_name(r.verdict);
    out["ray_count"] = r.ray_count;
    out["lambda_nonempty"] = r.lambda_nonempty;
    out["lambda_is_positive_orthant"] = r.lambda_is_positive_orthant;
    if (r.witness_columns) {
        Json cols = Json::array();
        for (int c : *r.witness_columns) cols.push_back(c + 1);
        out["witness_columns"] = cols;
        out["witness_polynomial"] = r.witness_polynomial;
        out["witness_is_monomial"] = r.witness_is_monomial;
    }
    out["injectivity_test_ran"] = r.injectivity_test_ran;
    if (r.injectivity_test_ran) {
        out["injectivity_coefficients_nonnegative"] = r.injectivity_coefficients_nonnegative;
        out["sigma_polynomial"] = r.sigma_polynomial;
    }
    return out;
}

namespace {

Json charpoly_json(const CharPoly& p) {
    Json out = Json::array();
    for (Index i = 0; i < p.sigma.size(); ++i) out.push_back(p.sigma(i).str());
    return out;
}

}  // namespace

Json point_verification_json(const PointVerification& v) {
    Json out;
    out["stationary"] = v.stationary;
    out["jacobian_rank"] = v.jacobian_rank;
    out["rank_matches"] = v.rank_matches;
    out["kernel_image_split"] = v.kernel_image_split;
    out["char_poly_divisible"] = v.divisible;
    out["hurwitz_applicable"] = v.hurwitz_applicable;
    out["hurwitz_stable"] = v.hurwitz_stable;
    Json dets = Json::array();
    for (const auto& d : v.hurwitz_determinants) dets.push_back(d.str());
    out["hurwitz_determinants"] = dets;
    out["sigma"] = charpoly_json(v.char_polynomial);
    if (v.divided) out["divided_sigma"] = charpoly_json(*v.divided);
    out["dimension_valid"] = v.dimension_valid;
    out["all_pass"] = v.all_pass;
    out["notes"] = v.notes;
    return out;
}

Json ltc_json(const LtcResult& r, const ReactionNetwork& net) {
    Json sets = Json::array();
    for (const auto& s : r.sets) {
        Json js;
        Json names = Json::array();
        for (int i : s.species) names.push_back(net.species()[static_cast<size_t>(i)]);
        js["species"] = names;
        js["minimal"] = s.minimal;
        Json omega = Json::array();
        for (Index i = 0; i < s.omega.size(); ++i) omega.push_back(s.omega(i));
        js["omega"] = omega;
        sets.push_back(js);
    }
    Json out;
    out["count"] = r.sets.size();
    out["sets"] = sets;
    return out;
}

Json integral_links_json(const IntegralLinkResult& r, const ReactionNetwork& net) {
    Json out;
    out["one_terminal_per_component"] = r.one_terminal_per_component;
    Json links = Json::array();
    for (const auto& link : r.links) {
        Json jl;
        jl["alpha"] = rvec_json(link.alpha);
        Json names = Json::array();
        for (int i : link.supp) names.push_back(net.species()[static_cast<size_t>(i)]);
        jl["support"] = names;
        jl["decomposable"] = link.decomposable;
        if (link.decomposable) {
            Json ell = Json::array();
            for (const auto& l : link.ell) ell.push_back(l.str());
            jl["ell"] = ell;
        }
        jl["ltc_implied"] = link.ltc_implied;
        links.push_back(jl);
    }
    out["links"] = links;
    if (r.converse_applicable) {
        Json entries = Json::array();
        for (const auto& entry : r.converse) {
            Json je;
            Json names = Json::array();
            for (int i : entry.ltc_species) names.push_back(net.species()[static_cast<size_t>(i)]);
            je["ltc_species"] = names;
            je["integral_exists"] = entry.integral_exists;
            entries.push_back(je);
        }
        out["converse_check_experimental"] = entries;
    }
    return out;
}

Json slow_fast_json(const SlowFastSystem& sys, const ReactionNetwork& net) {
    Json out;
    Json scaled = Json::array();
    for (int i : sys.scaled_species) scaled.push_back(net.species()[static_cast<size_t>(i)]);
    out["scaled_species"] = scaled;
    Json slow = Json::array();
    for (int i : sys.unscaled_species) slow.push_back(net.species()[static_cast<size_t>(i)]);
    out["slow_species"] = slow;
    Json eps_reactions = Json::array();
    for (int j : sys.eps_reactions)
        eps_reactions.push_back(net.reactions()[static_cast<size_t>(j)].label);
    out["eps_reactions"] = eps_reactions;

    Json equations = Json::array();
    for (const auto& eq : sys.equations) {
        Json je;
        je["species"] = net.species()[static_cast<size_t>(eq.species)];
        je["starred"] = eq.starred;
        je["eps_prefactor"] = eq.eps_prefactor;
        Json terms = Json::array();
        for (const auto& t : eq.terms) {
            Json jt;
            jt["coeff"] = t.coeff.str();
            jt["kappa"] = net.reactions()[static_cast<size_t>(t.reaction)].label;
            jt["kappa_starred"] = t.kappa_starred;
            Json expo = Json::array();
            for (Index l = 0; l < t.expo.size(); ++l) expo.push_back(t.expo(l));
            jt["exponents"] = expo;
            jt["eps_power"] = t.eps_power;
            terms.push_back(jt);
        }
        je["terms"] = terms;
        equations.push_back(je);
    }
    out["equations"] = equations;

    Json integrals = Json::array();
    for (const auto& ci : sys.integrals) {
        Json ji;
        ji["alpha"] = rvec_json(ci.alpha);
        ji["fast_attached"] = ci.fast_attached;
        integrals.push_back(ji);
    }
    out["first_integrals"] = integrals;
    out["listing"] = system_listing(sys, net);
    return out;
}

Json near_tfpv_json(const NearTfpvResult& r) {
    Json out;
    out["stationary"] = r.stationary;
    out["dim"] = r.dim;
    Json sigma = Json::array();
    for (Index i = 0; i < r.sigma.size(); ++i) sigma.push_back(r.sigma(i).str());
    out["sigma"] = sigma;
    out["on_critical_set"] = r.on_critical_set;
    out["multiplicity_one"] = r.multiplicity_one;
    out["compact_scc"] = r.compact_scc;
    out["dimension_rule_supported"] = r.dimension_rule_supported;
    out["rule_satisfied"] = r.rule_satisfied;
    Json dets = Json::array();
    for (const auto& d : r.hurwitz_determinants) dets.push_back(d.str());
    out["hurwitz_determinants"] = dets;
    out["hurwitz_all_nonnegative"] = r.hurwitz_all_nonnegative;
    out["hurwitz_zero_positions"] = r.hurwitz_zero_positions;
    out["verdict"] = r.verdict;
    out["notes"] = r.notes;
    return out;
}

Json make_report(const ReactionNetwork& net, const std::string& command, Json options,
                 Json summary, Json certificates, const std::vector<std::string>& warnings) {
    Json out;
    out["network"] = network_json(net);
    Json cmd;
    cmd["name"] = command;
    cmd["options"] = std::move(options);
    out["command"] = cmd;
    out["summary"] = std::move(summary);
    out["certificates"] = std::move(certificates);
    out["warnings"] = warnings;
    return out;
}

std::string emit_report(const Json& report) {
    return report.dump(2) + "\n";
}

}  // namespace crn
