#include "crn/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "crn/parser.hpp"
#include "crn/report.hpp"
#include "crn/sim.hpp"

namespace crn {
namespace cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20250810;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

RVec parse_rational_list(const std::string& text, Index expected, const std::string& what) {
    const auto parts = split(text, ',');
    if (expected >= 0 && static_cast<Index>(parts.size()) != expected)
        throw InputError(what + ": expected " + std::to_string(expected) + " values, got " +
                         std::to_string(parts.size()));
    RVec out(static_cast<Index>(parts.size()));
    for (size_t i = 0; i < parts.size(); ++i) {
        try {
            out(static_cast<Index>(i)) = Rational::from_string(parts[i]);
        } catch (const std::exception& e) {
            throw InputError(what + ": " + e.what());
        }
    }
    return out;
}

std::vector<int> parse_species_list(const ReactionNetwork& net, const std::string& text) {
    std::vector<int> out;
    for (const auto& name : split(text, ',')) {
        int idx = net.species_index(name);
        if (idx < 0) throw InputError("unknown species: " + name);
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> parse_reaction_list(const ReactionNetwork& net, const std::string& text) {
    std::vector<int> out;
    for (const auto& label : split(text, ',')) {
        int idx = net.reaction_index(label);
        if (idx < 0) throw InputError("unknown reaction label: " + label);
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// kappa from an explicit comma list (values in reaction order) or from
/// name=value pairs; falls back to the file bindings.
RateAssignment resolve_kappa(const ReactionNetwork& net, const std::string& kappa_opt) {
    if (kappa_opt.empty()) return RateAssignment::from_bindings(net);
    if (kappa_opt.find('=') == std::string::npos) {
        RVec values = parse_rational_list(kappa_opt, net.reaction_count(), "--kappa");
        for (Index j = 0; j < values.size(); ++j)
            if (values(j) < Rational(0)) throw InputError("--kappa: negative rate");
        return RateAssignment::from_vector(net, values);
    }
    std::map<std::string, Rational> bound = net.rate_values();
    for (const auto& item : split(kappa_opt, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("--kappa: expected name=value: " + item);
        const std::string label = item.substr(0, eq);
        if (net.reaction_index(label) < 0) throw InputError("unknown reaction label: " + label);
        try {
            bound[label] = Rational::from_string(item.substr(eq + 1));
        } catch (const std::exception& e) {
            throw InputError(std::string("--kappa: ") + e.what());
        }
    }
    return RateAssignment::from_bindings(net.with_rates(bound));
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CRN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("CRN_SEED is not an unsigned integer");
        }
    }
    return kDefaultSeed;
}

void print_text_or_json(std::ostream& out, bool json_mode, const Json& report,
                        const std::string& text) {
    if (json_mode)
        out << emit_report(report);
    else
        out << text;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const ReactionNetwork& net, bool json_mode, std::ostream& out) {
    const StructureSummary s = structure(net);
    Json report = make_report(net, "analyze", Json::object(), structure_json(s), Json::array(), {});
    std::ostringstream text;
    text << net.name() << ": n=" << s.n << " m=" << s.m << " d=" << s.d << " d*=" << s.d_star
         << "\n"
         << "components r=" << s.components << ", terminal SCCs T=" << s.terminal_sccs << "\n"
         << "rank N=" << s.rank_N << ", codimension s*=" << s.codimension
         << ", deficiency=" << s.deficiency << "\n"
         << "weakly reversible: " << (s.weakly_reversible ? "yes" : "no") << "\n";
    print_text_or_json(out, json_mode, report, text.str());
    return 0;
}

// ------------------------------------------------------------------- tfpv

int cmd_tfpv(const ReactionNetwork& net, int max_off, bool first_order,
             const std::string& verify_at, bool run_precheck, bool json_mode, std::ostream& out) {
    std::vector<std::string> warnings;
    Json options = Json::object();
    Json summary = Json::object();
    Json certificates = Json::array();
    int exit_code = 0;

    if (!verify_at.empty()) {
        const auto parts = split(verify_at, ';');
        if (parts.size() != 3) throw InputError("--verify-at expects 'kappa;x0;s'");
        RateAssignment khat = RateAssignment::from_vector(
            net, parse_rational_list(parts[0], net.reaction_count(), "--verify-at kappa"));
        RVec x0 = parse_rational_list(parts[1], net.species_count(), "--verify-at x0");
        Index s = 0;
        try {
            s = std::stol(parts[2]);
        } catch (const std::exception&) {
            throw InputError("--verify-at: s must be an integer");
        }
        options["verify_at"] = verify_at;
        const PointVerification v = verify_tfpv_at_point(net, khat, x0, s);
        summary["mode"] = "point_verification";
        summary["point_verification"] = point_verification_json(v);
        if (v.all_pass) {
            TfpvCertificate cert;
            for (Index j = 0; j < net.reaction_count(); ++j)
                if (khat.values(j).is_zero()) {
                    cert.off_set.push_back(static_cast<int>(j));
                    cert.off_labels.push_back(net.reactions()[static_cast<size_t>(j)].label);
                }
            cert.dimension = s;
            cert.justification = Justification::PointVerified;
            cert.sub_summary = structure(subnetwork(net, khat));
            certificates.push_back(certificate_json(cert));
        } else {
            exit_code = 1;
        }
        for (const auto& n : v.notes) warnings.push_back(n);
        Json report = make_report(net, "tfpv", options, summary, certificates, warnings);
        std::ostringstream text;
        text << "point verification: " << (v.all_pass ? "PASS" : "FAIL") << "\n";
        for (const auto& n : v.notes) text << "note: " << n << "\n";
        print_text_or_json(out, json_mode, report, text.str());
        return exit_code;
    }

    std::vector<TfpvCertificate> certs;
    std::ostringstream text;
    if (first_order) {
        options["first_order"] = true;
        certs = first_order_tfpv(net);
        summary["mode"] = "first_order";
    } else {
        if (max_off >= 0) options["max_off"] = max_off;
        EnumerationResult res = enumerate_structural_tfpv(net, max_off);
        certs = std::move(res.certificates);
        summary["mode"] = res.theorem39_mode ? "deficiency_zero" : "complex_balanced";
        warnings = std::move(res.warnings);
    }
    if (run_precheck) {
        const PrecheckResult pre = no_positive_tfpv_precheck(net);
        summary["precheck"] = precheck_json(pre);
        for (const auto& w : pre.warnings) warnings.push_back(w);
        text << "precheck: " << verdict_name(pre.verdict) << "\n";
    }
    summary["count"] = certs.size();
    for (const auto& c : certs) certificates.push_back(certificate_json(c));
    if (certs.empty()) exit_code = 1;

    text << certs.size() << " certificate(s)\n";
    for (const auto& c : certs) {
        text << "  dim " << c.dimension << "  off {";
        for (size_t i = 0; i < c.off_labels.size(); ++i)
            text << (i ? "," : "") << c.off_labels[i];
        text << "}  " << justification_name(c.justification);
        if (c.cb_verified.has_value()) text << (*c.cb_verified ? "  cb ok" : "  cb FAILS");
        text << "\n";
    }
    Json report = make_report(net, "tfpv", options, summary, certificates, warnings);
    print_text_or_json(out, json_mode, report, text.str());
    return exit_code;
}

// -------------------------------------------------------------------- ltc

int cmd_ltc(const ReactionNetwork& net, bool all, bool integrals, bool json_mode,
            std::ostream& out) {
    Json options = Json::object();
    if (all) options["all"] = true;
    if (integrals) options["integrals"] = true;

    const LtcResult res = enumerate_ltc(net, all);
    Json summary = ltc_json(res, net);
    std::vector<std::string> warnings = res.warnings;

    std::ostringstream text;
    text << res.sets.size() << " LTC species set(s)\n";
    for (const auto& s : res.sets) {
        text << "  {";
        for (size_t i = 0; i < s.species.size(); ++i)
            text << (i ? "," : "") << net.species()[static_cast<size_t>(s.species[i])];
        text << "}" << (s.minimal ? "" : "  (not minimal)") << "\n";
    }
    if (integrals) {
        const IntegralLinkResult links = first_integral_links(net);
        summary["integral_links"] = integral_links_json(links, net);
        for (const auto& w : links.warnings) warnings.push_back(w);
    }
    Json report = make_report(net, "ltc", options, summary, Json::array(), warnings);
    print_text_or_json(out, json_mode, report, text.str());
    return res.sets.empty() ? 1 : 0;
}

// ------------------------------------------------------------------ scale

int cmd_scale(const ReactionNetwork& net, const std::string& species, const std::string& off,
              bool json_mode, std::ostream& out) {
    if (species.empty()) throw InputError("scale: --species is required");
    const std::vector<int> set = parse_species_list(net, species);
    Json options = Json::object();
    options["species"] = species;
    SlowFastSystem sys;
    if (off.empty()) {
        sys = scale(net, set);
    } else {
        options["off"] = off;
        sys = partial_scale(net, parse_reaction_list(net, off), set);
    }
    Json report =
        make_report(net, "scale", options, slow_fast_json(sys, net), Json::array(), {});
    print_text_or_json(out, json_mode, report, system_listing(sys, net));
    return 0;
}

// -------------------------------------------------------------------- scc

int cmd_scc(const ReactionNetwork& net, const std::string& retain, const std::string& theta,
            const std::string& point, const std::string& kappa_opt, bool json_mode,
            std::ostream& out) {
    if (retain.empty()) throw InputError("scc: --retain is required");
    const std::vector<int> retained = parse_species_list(net, retain);
    const RMat basis = canonical_integral_basis(net);
    const SccRestriction restriction = restrict_to_scc(net, basis, retained);

    Json options = Json::object();
    options["retain"] = retain;

    std::vector<std::string> theta_names;
    RVec theta_values = RVec::Zero(restriction.s_star);
    if (!theta.empty()) {
        const auto parts = split(theta, ',');
        if (static_cast<Index>(parts.size()) != restriction.s_star)
            throw InputError("scc: --theta needs " + std::to_string(restriction.s_star) +
                             " name=value entries (one per integral)");
        for (size_t i = 0; i < parts.size(); ++i) {
            const auto eq = parts[i].find('=');
            if (eq == std::string::npos)
                throw InputError("scc: --theta entries are name=value");
            theta_names.push_back(parts[i].substr(0, eq));
            try {
                theta_values(static_cast<Index>(i)) =
                    Rational::from_string(parts[i].substr(eq + 1));
            } catch (const std::exception& e) {
                throw InputError(std::string("scc: --theta: ") + e.what());
            }
        }
        options["theta"] = theta;
    }

    const auto names = restriction.variable_names(net, theta_names);
    Json summary = Json::object();
    {
        Json jint = Json::array();
        for (Index r = 0; r < basis.rows(); ++r) {
            Json ji;
            ji["name"] = theta_names.size() == static_cast<size_t>(basis.rows())
                             ? theta_names[static_cast<size_t>(r)]
                             : ("theta" + std::to_string(r + 1));
            ji["alpha"] = rvec_json(basis.row(r).transpose());
            jint.push_back(ji);
        }
        summary["integrals"] = jint;
        Json jret = Json::array();
        for (int i : restriction.retained) jret.push_back(net.species()[static_cast<size_t>(i)]);
        summary["retained"] = jret;
        Json jeq = Json::array();
        for (const auto& p : restriction.rhs) jeq.push_back(p.str(names));
        summary["restricted_rhs"] = jeq;
    }

    std::ostringstream text;
    text << "restricted system (" << restriction.retained.size() << " variables)\n";
    for (size_t i = 0; i < restriction.rhs.size(); ++i)
        text << "  " << net.species()[static_cast<size_t>(restriction.retained[i])]
             << "' = " << restriction.rhs[i].str(names) << "\n";

    int exit_code = 0;
    std::vector<std::string> warnings;
    if (!point.empty()) {
        if (theta.empty()) throw InputError("scc: --point requires --theta");
        RVec xhat0 = RVec::Zero(static_cast<Index>(retained.size()));
        std::vector<bool> given(retained.size(), false);
        for (const auto& item : split(point, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw InputError("scc: --point entries are name=value");
            const int sp = net.species_index(item.substr(0, eq));
            bool found = false;
            for (size_t i = 0; i < retained.size(); ++i) {
                if (restriction.retained[i] == sp) {
                    try {
                        xhat0(static_cast<Index>(i)) = Rational::from_string(item.substr(eq + 1));
                    } catch (const std::exception& e) {
                        throw InputError(std::string("scc: --point: ") + e.what());
                    }
                    given[i] = true;
                    found = true;
                }
            }
            if (!found)
                throw InputError("scc: --point names a variable that is not retained: " + item);
        }
        for (size_t i = 0; i < given.size(); ++i)
            if (!given[i])
                throw InputError("scc: --point misses retained variable " +
                                 net.species()[static_cast<size_t>(restriction.retained[i])]);
        options["point"] = point;
        if (!kappa_opt.empty()) options["kappa"] = kappa_opt;
        const RateAssignment k = resolve_kappa(net, kappa_opt);
        const NearTfpvResult near = near_tfpv_check(net, restriction, xhat0, k, theta_values);
        summary["sigma"] = [&] {
            Json js = Json::array();
            for (Index i = 0; i < near.sigma.size(); ++i) js.push_back(near.sigma(i).str());
            return js;
        }();
        summary["near_tfpv"] = near_tfpv_json(near);
        for (const auto& n : near.notes) warnings.push_back(n);
        text << "sigma-hat:";
        for (Index i = 0; i < near.sigma.size(); ++i) text << " " << near.sigma(i).str();
        text << "\nverdict: " << near.verdict << "\n";
        if (!(near.stationary && near.rule_satisfied)) exit_code = 1;
    }

    Json report = make_report(net, "scc", options, summary, Json::array(), warnings);
    print_text_or_json(out, json_mode, report, text.str());
    return exit_code;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const ReactionNetwork& net, const std::string& kappa_opt, const std::string& x0s,
                 double t_end, double step, const std::string& eps_sweep, const std::string& rho,
                 const std::string& scaled, const std::string& probe,
                 std::optional<std::uint64_t> seed_flag, const std::string& output,
                 bool json_mode, std::ostream& out) {
    if (x0s.empty()) throw InputError("simulate: --x0 is required");
    const RateAssignment k = resolve_kappa(net, kappa_opt);
    const Eigen::VectorXd kappa = to_double(k.values);
    const RVec x0r = parse_rational_list(x0s, net.species_count(), "--x0");
    const Eigen::VectorXd x0 = to_double(x0r);
    if (t_end <= 0) throw InputError("simulate: --t must be positive");

    Json options = Json::object();
    if (!kappa_opt.empty()) options["kappa"] = kappa_opt;
    options["x0"] = x0s;
    options["t"] = t_end;
    options["step"] = step;

    auto deliver = [&](const std::string& payload) {
        if (output.empty()) {
            out << payload;
        } else {
            std::ofstream f(output, std::ios::binary);
            if (!f) throw InputError("cannot write output file: " + output);
            f << payload;
        }
    };

    if (!probe.empty()) {
        const auto parts = split(probe, ';');
        if (parts.size() != 2) throw InputError("--probe expects 'radius;samples'");
        const double radius = std::stod(parts[0]);
        const int samples = std::stoi(parts[1]);
        const std::uint64_t seed = resolve_seed(seed_flag);
        options["probe"] = probe;
        options["seed"] = seed;
        const sim::AttractivityResult res =
            sim::attractivity_probe(net, kappa, x0, radius, samples, t_end, step, seed);
        Json summary;
        summary["fraction_converged"] = res.fraction;
        summary["fitted_rate"] = res.fitted_rate;
        summary["samples"] = samples;
        Json report = make_report(net, "simulate", options, summary, Json::array(), {});
        std::ostringstream text;
        text << "converged fraction " << res.fraction << ", fitted rate " << res.fitted_rate
             << "\n";
        print_text_or_json(out, json_mode, report, text.str());
        return 0;
    }

    if (!eps_sweep.empty()) {
        std::vector<double> eps_list;
        for (const auto& e : split(eps_sweep, ',')) eps_list.push_back(std::stod(e));
        sim::PerturbationCurve curve;
        curve.base = kappa;
        curve.direction = Eigen::VectorXd::Zero(kappa.size());
        if (!rho.empty())
            curve.direction =
                to_double(parse_rational_list(rho, net.reaction_count(), "--rho"));
        std::vector<int> scaled_species;
        if (!scaled.empty()) scaled_species = parse_species_list(net, scaled);
        options["eps_sweep"] = eps_sweep;
        if (!rho.empty()) options["rho"] = rho;
        if (!scaled.empty()) options["scaled"] = scaled;

        const sim::ReductionTable table =
            sim::reduction_error(net, curve, scaled_species, eps_list, x0, t_end, step);
        Json rows = Json::array();
        for (const auto& r : table.rows) {
            Json jr;
            jr["eps"] = r.eps;
            jr["max_scaled"] = r.max_scaled;
            jr["distance"] = r.distance;
            rows.push_back(jr);
        }
        Json summary;
        summary["metric"] = table.metric;
        summary["rows"] = rows;
        summary["empirical_orders"] = table.empirical_orders;
        Json report = make_report(net, "simulate", options, summary, Json::array(), {});
        std::ostringstream text;
        for (const auto& r : table.rows)
            text << "eps=" << r.eps << "  max_scaled=" << r.max_scaled
                 << "  distance=" << r.distance << "\n";
        print_text_or_json(out, json_mode, report, text.str());
        return 0;
    }

    const sim::Trajectory traj = sim::integrate(net, kappa, x0, t_end, step);
    if (json_mode) {
        Json summary;
        summary["steps"] = traj.times.size() - 1;
        Json final_state = Json::array();
        for (Eigen::Index c = 0; c < traj.states.cols(); ++c)
            final_state.push_back(traj.states(traj.states.rows() - 1, c));
        summary["final_state"] = final_state;
        Json report = make_report(net, "simulate", options, summary, Json::array(), {});
        out << emit_report(report);
    } else {
        deliver(sim::trajectory_csv(traj, net.species()));
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"reaction network TFPV / LTC analysis toolkit", "crn"};
    app.require_subcommand(1);

    std::string input;
    bool json_mode = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", input, "network file (.crn)")->required();
        sub->add_flag("--json", json_mode, "machine-readable report");
    };

    auto* analyze = app.add_subcommand("analyze", "structural summary");
    add_common(analyze);

    auto* tfpv = app.add_subcommand("tfpv", "TFPV certificates");
    add_common(tfpv);
    int max_off = -1;
    bool first_order = false;
    bool precheck = false;
    std::string verify_at;
    tfpv->add_option("--max-off", max_off, "largest off-set size");
    tfpv->add_flag("--first-order", first_order, "first-order enumeration");
    tfpv->add_flag("--precheck", precheck, "run the no-positive-TFPV prechecks");
    tfpv->add_option("--verify-at", verify_at, "'kappa;x0;s' point verification");

    auto* ltc = app.add_subcommand("ltc", "LTC species sets");
    add_common(ltc);
    bool all_sets = false;
    bool integrals = false;
    ltc->add_flag("--all", all_sets, "include non-minimal sets");
    ltc->add_flag("--integrals", integrals, "first-integral links");

    auto* scale_cmd = app.add_subcommand("scale", "slow-fast scaling");
    add_common(scale_cmd);
    std::string species, off;
    scale_cmd->add_option("--species", species, "LTC species, comma separated")->required();
    scale_cmd->add_option("--off", off, "reactions re-entering at order eps");

    auto* scc = app.add_subcommand("scc", "restriction to a compatibility class");
    add_common(scc);
    std::string retain, theta, point, kappa_opt;
    scc->add_option("--retain", retain, "retained variables")->required();
    scc->add_option("--theta", theta, "level values, name=value list");
    scc->add_option("--point", point, "evaluation point, name=value list");
    scc->add_option("--kappa", kappa_opt, "rate values");

    auto* simulate = app.add_subcommand("simulate", "numerical integration");
    add_common(simulate);
    std::string x0s, eps_sweep, rho, scaled, probe, output;
    double t_end = 10.0, step = 1e-3;
    std::optional<std::uint64_t> seed_flag;
    std::uint64_t seed_value = 0;
    simulate->add_option("--kappa", kappa_opt, "rate values (comma list or name=value)");
    simulate->add_option("--x0", x0s, "initial state")->required();
    simulate->add_option("--t", t_end, "end time");
    simulate->add_option("--step", step, "RK4 step");
    simulate->add_option("--eps-sweep", eps_sweep, "eps list for the reduction error table");
    simulate->add_option("--rho", rho, "perturbation direction for the sweep");
    simulate->add_option("--scaled", scaled, "species scaled by eps at t=0 (LTC sweep)");
    simulate->add_option("--probe", probe, "'radius;samples' attractivity probe");
    auto* seed_opt = simulate->add_option("--seed", seed_value, "simulation seed");
    simulate->add_option("--output", output, "write CSV here instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (seed_opt->count() > 0) seed_flag = seed_value;

    try {
        const ReactionNetwork net = parse_file(input);
        if (analyze->parsed()) return cmd_analyze(net, json_mode, out);
        if (tfpv->parsed())
            return cmd_tfpv(net, max_off, first_order, verify_at, precheck, json_mode, out);
        if (ltc->parsed()) return cmd_ltc(net, all_sets, integrals, json_mode, out);
        if (scale_cmd->parsed()) return cmd_scale(net, species, off, json_mode, out);
        if (scc->parsed())
            return cmd_scc(net, retain, theta, point, kappa_opt, json_mode, out);
        if (simulate->parsed())
            return cmd_simulate(net, kappa_opt, x0s, t_end, step, eps_sweep, rho, scaled, probe,
                                seed_flag, output, json_mode, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnboundRateError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cli
}  // namespace crn
