#include "qhardy/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qhardy/cfl/checker.hpp"
#include "qhardy/cfl/parser.hpp"
#include "qhardy/cfl/scripts.hpp"
#include "qhardy/correlations.hpp"
#include "qhardy/mc.hpp"

namespace qhardy {

namespace {

constexpr const char* kSchema = "qhardy/1";

// Usage-level problems detected after flag parsing (bad setting names, ...).
struct UsageError {
    std::string message;
};

// 17 significant digits in JSON, 12 in CSV; infinities become "inf".
std::string format_number(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string jnum(double v) {
    if (std::isinf(v) || std::isnan(v)) return "\"" + format_number(v, 17) + "\"";
    return format_number(v, 17);
}

std::string cnum(double v) { return format_number(v, 12); }

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

const char* jbool(bool b) { return b ? "true" : "false"; }

struct SettingsPair {
    SettingLabel left;
    SettingLabel right;
    std::string left_name;
    std::string right_name;
};

// CLI setting names are ASCII: Lz, Lx, Rz, Rtheta.
SettingLabel setting_from_name(const std::string& name) {
    if (name == "Lz") return SettingLabel::L1;
    if (name == "Lx") return SettingLabel::L2;
    if (name == "Rz") return SettingLabel::R1;
    if (name == "Rtheta") return SettingLabel::R2;
    throw UsageError{"unknown setting \"" + name + "\" (expected Lz, Lx, Rz or Rtheta)"};
}

SettingsPair parse_settings(const std::string& spec) {
    auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw UsageError{"--settings expects \"<left>,<right>\", e.g. Lz,Rz"};
    SettingsPair pair{SettingLabel::L1, SettingLabel::R1, spec.substr(0, comma),
                      spec.substr(comma + 1)};
    pair.left = setting_from_name(pair.left_name);
    pair.right = setting_from_name(pair.right_name);
    if (side_of(pair.left) != Side::L || side_of(pair.right) != Side::R)
        throw UsageError{"--settings expects one left setting (Lz|Lx) then one right (Rz|Rtheta)"};
    return pair;
}

const char* outcome_name(Outcome o) { return to_string(o); }

// -- probs -------------------------------------------------------------------

int cmd_probs(double theta_value, const std::string& settings, bool csv, std::ostream& out) {
    const SettingsPair pair = parse_settings(settings);
    const Theta theta(theta_value);
    const auto dist = joint_distribution(hardy_state(theta),
                                         setting_observable(pair.left, theta).second,
                                         setting_observable(pair.right, theta).second);
    if (csv) {
        out << "theta,setting_l,setting_r,outcome_l,outcome_r,probability\n";
        for (Outcome l : {Outcome::Plus, Outcome::Minus})
            for (Outcome r : {Outcome::Plus, Outcome::Minus})
                out << cnum(theta.value()) << ',' << pair.left_name << ',' << pair.right_name
                    << ',' << outcome_name(l) << ',' << outcome_name(r) << ','
                    << cnum(dist.prob(l, r)) << '\n';
        return kExitOk;
    }
    out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"probs\",\"theta\":"
        << jnum(theta.value()) << ",\"setting_l\":" << jstr(pair.left_name)
        << ",\"setting_r\":" << jstr(pair.right_name) << ",\"cells\":[";
    bool first = true;
    for (Outcome l : {Outcome::Plus, Outcome::Minus})
        for (Outcome r : {Outcome::Plus, Outcome::Minus}) {
            if (!first) out << ',';
            first = false;
            out << "{\"outcome_l\":" << jstr(outcome_name(l))
                << ",\"outcome_r\":" << jstr(outcome_name(r))
                << ",\"probability\":" << jnum(dist.prob(l, r)) << '}';
        }
    out << "]}\n";
    return kExitOk;
}

// -- chain ---------------------------------------------------------------

int cmd_chain(double theta_value, double eps, bool csv, std::ostream& out) {
    const Theta theta(theta_value);
    const ChainReport report = chain_report(theta);
    bool perfect = true;
    for (const ChainLink& link : report.links)
        perfect = perfect && std::abs(link.probability - 1.0) <= eps;

    if (csv) {
        out << "theta,link1,link2,link3,quantum_conditional,discrepancy\n";
        out << cnum(theta.value());
        for (const ChainLink& link : report.links) out << ',' << cnum(link.probability);
        out << ',' << cnum(report.quantum_conditional) << ',' << cnum(report.discrepancy) << '\n';
    } else {
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"chain\",\"theta\":"
            << jnum(theta.value()) << ",\"links\":[";
        for (std::size_t i = 0; i < report.links.size(); ++i) {
            const ChainLink& link = report.links[i];
            if (i) out << ',';
            out << "{\"condition_setting\":" << jstr(to_string(link.condition_setting))
                << ",\"condition_outcome\":" << jstr(outcome_name(link.condition_outcome))
                << ",\"target_setting\":" << jstr(to_string(link.target_setting))
                << ",\"target_outcome\":" << jstr(outcome_name(link.target_outcome))
                << ",\"probability\":" << jnum(link.probability) << '}';
        }
        out << "],\"conclusion_setting\":" << jstr(to_string(report.conclusion_setting))
            << ",\"conclusion_outcome\":" << jstr(outcome_name(report.conclusion_outcome))
            << ",\"quantum_conditional\":" << jnum(report.quantum_conditional)
            << ",\"discrepancy\":" << jnum(report.discrepancy) << "}\n";
    }
    return perfect ? kExitOk : kExitVerification;
}

// -- correlations -----------------------------------------------------------

int cmd_correlations(double theta_value, double eps, bool csv, std::ostream& out) {
    const Theta theta(theta_value);
    const DecompositionReport report = verify_decompositions(theta);
    bool ok = report.max_residual() < eps;
    if (csv) {
        out << "theta,residual_lz,residual_rtheta,residual_lx\n"
            << cnum(theta.value()) << ',' << cnum(report.residual_lz) << ','
            << cnum(report.residual_rtheta) << ',' << cnum(report.residual_lx) << '\n';
    } else {
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"correlations\",\"theta\":"
            << jnum(theta.value()) << ",\"residual_lz\":" << jnum(report.residual_lz)
            << ",\"residual_rtheta\":" << jnum(report.residual_rtheta)
            << ",\"residual_lx\":" << jnum(report.residual_lx)
            << ",\"eps\":" << jnum(eps) << ",\"ok\":" << jbool(ok) << "}\n";
    }
    return ok ? kExitOk : kExitVerification;
}

// -- hv-enum -----------------------------------------------------------------

int cmd_hv_enum(double theta_value, double eps, bool csv, std::ostream& out) {
    const Theta theta(theta_value);
    const HardyContradictionReport report = hardy_contradiction(theta, eps);
    if (csv) {
        out << "theta,qm_event_probability,hv_event_possible,l1,l2,r1,r2\n";
        for (const HiddenAssignment& v : report.admissible)
            out << cnum(theta.value()) << ',' << cnum(report.qm_event_probability) << ','
                << jbool(report.hv_event_possible) << ','
                << outcome_name(v.value(SettingLabel::L1)) << ','
                << outcome_name(v.value(SettingLabel::L2)) << ','
                << outcome_name(v.value(SettingLabel::R1)) << ','
                << outcome_name(v.value(SettingLabel::R2)) << '\n';
    } else {
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"hv_enum\",\"theta\":"
            << jnum(theta.value()) << ",\"eps\":" << jnum(eps) << ",\"admissible\":[";
        for (std::size_t i = 0; i < report.admissible.size(); ++i) {
            const HiddenAssignment& v = report.admissible[i];
            if (i) out << ',';
            out << "{\"L1\":" << jstr(outcome_name(v.value(SettingLabel::L1)))
                << ",\"L2\":" << jstr(outcome_name(v.value(SettingLabel::L2)))
                << ",\"R1\":" << jstr(outcome_name(v.value(SettingLabel::R1)))
                << ",\"R2\":" << jstr(outcome_name(v.value(SettingLabel::R2))) << '}';
        }
        out << "],\"admissible_count\":" << report.admissible.size()
            << ",\"qm_event_probability\":" << jnum(report.qm_event_probability)
            << ",\"hv_event_possible\":" << jbool(report.hv_event_possible) << "}\n";
    }
    return kExitOk;
}

// -- check ---------------------------------------------------------------

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_check(const std::string& path, const std::string& semantics_name,
              std::optional<double> theta_override, bool csv, std::ostream& out,
              std::ostream& err) {
    cfl::Semantics semantics;
    if (semantics_name == "realist") {
        semantics = cfl::Semantics::Realist;
    } else if (semantics_name == "operational") {
        semantics = cfl::Semantics::Operational;
    } else {
        throw UsageError{"--semantics must be realist or operational"};
    }

    std::optional<cfl::Derivation> derivation;
    if (auto text = read_file(path)) {
        derivation = cfl::parse_derivation(*text);
    } else {
        // Built-in scripts may be named directly: stapp-A or stapp-A.cfl.
        std::string name = path;
        if (name.size() > 4 && name.substr(name.size() - 4) == ".cfl")
            name = name.substr(0, name.size() - 4);
        auto scripts = cfl::builtin_scripts();
        auto it = scripts.find(name);
        if (it == scripts.end()) {
            err << "cannot open \"" << path << "\" and no built-in script has that name\n";
            return kExitInput;
        }
        derivation = it->second;
    }
    if (theta_override) derivation->theta = Theta(*theta_override);

    const cfl::Verdict verdict = cfl::check_derivation(*derivation, semantics);
    if (csv) {
        out << "status,failing_step,reason,claimed_probability,quantum_probability\n";
        out << (verdict.accepted ? "accepted" : "rejected") << ',';
        if (verdict.failing_step) out << *verdict.failing_step;
        out << ',' << verdict.reason << ',';
        if (verdict.contradiction)
            out << cnum(verdict.contradiction->claimed_probability) << ','
                << cnum(verdict.contradiction->quantum_probability);
        else
            out << ',';
        out << '\n';
    } else {
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"check\",\"file\":" << jstr(path)
            << ",\"semantics\":" << jstr(semantics_name)
            << ",\"theta\":" << jnum(derivation->theta.value())
            << ",\"status\":" << jstr(verdict.accepted ? "accepted" : "rejected");
        if (verdict.failing_step) out << ",\"failing_step\":" << *verdict.failing_step;
        if (!verdict.reason.empty()) out << ",\"reason\":" << jstr(verdict.reason);
        if (verdict.contradiction)
            out << ",\"contradiction\":{\"claimed_probability\":"
                << jnum(verdict.contradiction->claimed_probability)
                << ",\"quantum_probability\":"
                << jnum(verdict.contradiction->quantum_probability) << '}';
        out << "}\n";
    }
    return verdict.accepted ? kExitOk : kExitVerification;
}

// -- sample ----------------------------------------------------------------

int cmd_sample(double theta_value, const std::string& settings, std::uint64_t n,
               std::uint64_t seed, bool csv, std::ostream& out) {
    const SettingsPair pair = parse_settings(settings);
    const Theta theta(theta_value);
    const StateVector state = hardy_state(theta);
    const SpinObservable obs_l = setting_observable(pair.left, theta).second;
    const SpinObservable obs_r = setting_observable(pair.right, theta).second;
    const SampleCounts counts = sample_joint(state, obs_l, obs_r, n, seed);
    const auto stats = frequency_report(counts, joint_distribution(state, obs_l, obs_r));

    if (csv) {
        out << "theta,setting_l,setting_r,n,seed,outcome_l,outcome_r,count,frequency,analytic_p,"
               "z\n";
        for (const CellStat& cell : stats)
            out << cnum(theta.value()) << ',' << pair.left_name << ',' << pair.right_name << ','
                << counts.n << ',' << counts.seed << ',' << outcome_name(cell.left) << ','
                << outcome_name(cell.right) << ',' << cell.count << ',' << cnum(cell.frequency)
                << ',' << cnum(cell.analytic_p) << ',' << cnum(cell.z) << '\n';
    } else {
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"sample\",\"theta\":"
            << jnum(theta.value()) << ",\"setting_l\":" << jstr(pair.left_name)
            << ",\"setting_r\":" << jstr(pair.right_name) << ",\"n\":" << counts.n
            << ",\"seed\":" << counts.seed << ",\"cells\":[";
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const CellStat& cell = stats[i];
            if (i) out << ',';
            out << "{\"outcome_l\":" << jstr(outcome_name(cell.left))
                << ",\"outcome_r\":" << jstr(outcome_name(cell.right))
                << ",\"count\":" << cell.count << ",\"frequency\":" << jnum(cell.frequency)
                << ",\"analytic_p\":" << jnum(cell.analytic_p) << ",\"z\":" << jnum(cell.z) << '}';
        }
        out << "]}\n";
    }
    return kExitOk;
}

// -- sweep ----------------------------------------------------------------

int cmd_sweep(double theta_min, double theta_max, int steps, bool csv, std::ostream& out) {
    if (steps < 1) throw UsageError{"--steps must be >= 1"};
    if (csv) out << "theta,quantum_conditional,discrepancy,qm_event_probability\n";
    std::string json_rows;
    for (int i = 0; i < steps; ++i) {
        double t = steps == 1 ? theta_min
                              : theta_min + (theta_max - theta_min) * i / (steps - 1);
        const Theta theta(t);
        const ChainReport chain = chain_report(theta);
        const double qm_event = joint_probability(hardy_state(theta), sigma_z(), sigma_z(),
                                                  Outcome::Plus, Outcome::Minus);
        if (csv) {
            out << cnum(t) << ',' << cnum(chain.quantum_conditional) << ','
                << cnum(chain.discrepancy) << ',' << cnum(qm_event) << '\n';
        } else {
            if (i) json_rows += ',';
            json_rows += "{\"theta\":" + jnum(t) +
                         ",\"quantum_conditional\":" + jnum(chain.quantum_conditional) +
                         ",\"discrepancy\":" + jnum(chain.discrepancy) +
                         ",\"qm_event_probability\":" + jnum(qm_event) + '}';
        }
    }
    if (!csv)
        out << "{\"schema\":" << jstr(kSchema) << ",\"command\":\"sweep\",\"rows\":[" << json_rows
            << "]}\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-particle correlation experiment toolkit"};
    app.require_subcommand(1);

    double theta = 0.0;
    double eps_chain = 1e-9;
    double eps_residual = 1e-11;
    double eps_cells = 1e-9;
    std::string settings;
    std::string format = "json";
    std::string semantics = "operational";
    std::string path;
    double theta_override = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double theta_min = 0.0, theta_max = 0.0;
    int steps = 0;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* probs = app.add_subcommand("probs", "Joint outcome probabilities for one setting pair");
    probs->add_option("--theta", theta, "State parameter, radians")->required();
    probs->add_option("--settings", settings, "Setting pair, e.g. Lz,Rz")->required();
    add_format(probs);

    CLI::App* chain = app.add_subcommand("chain", "Perfect-correlation chain and its quantum gap");
    chain->add_option("--theta", theta, "State parameter, radians")->required();
    chain->add_option("--eps", eps_chain, "Tolerance for a perfect link");
    add_format(chain);

    CLI::App* correlations =
        app.add_subcommand("correlations", "Residuals of the three state regroupings");
    correlations->add_option("--theta", theta, "State parameter, radians")->required();
    correlations->add_option("--eps", eps_residual, "Residual tolerance");
    add_format(correlations);

    CLI::App* hv_enum =
        app.add_subcommand("hv-enum", "Exhaustive hidden-assignment enumeration");
    hv_enum->add_option("--theta", theta, "State parameter, radians, in (0, pi/2)")->required();
    hv_enum->add_option("--eps", eps_cells, "Nonzero-cell threshold");
    add_format(hv_enum);

    CLI::App* check = app.add_subcommand("check", "Check a derivation file");
    check->add_option("file", path, "Derivation file (.cfl) or built-in script name")->required();
    check->add_option("--semantics", semantics, "realist or operational")
        ->check(CLI::IsMember({"realist", "operational"}));
    CLI::Option* theta_opt = check->add_option("--theta", theta_override, "Override the file's theta");
    add_format(check);

    CLI::App* sample = app.add_subcommand("sample", "Seeded Monte Carlo draws from one setting pair");
    sample->add_option("--theta", theta, "State parameter, radians")->required();
    sample->add_option("--settings", settings, "Setting pair, e.g. Lz,Rtheta")->required();
    sample->add_option("--n", n, "Number of draws")->required()->check(CLI::Range(std::uint64_t{1},
                                                                                  std::uint64_t{1} << 62));
    sample->add_option("--seed", seed, "RNG seed");
    add_format(sample);

    CLI::App* sweep = app.add_subcommand("sweep", "Chain quantities over a theta grid");
    sweep->add_option("--theta-min", theta_min, "Grid start, radians")->required();
    sweep->add_option("--theta-max", theta_max, "Grid end, radians")->required();
    sweep->add_option("--steps", steps, "Number of grid rows")->required();
    add_format(sweep);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << '\n';
        return kExitUsage;
    }

    const bool csv = format == "csv";
    try {
        if (*probs) return cmd_probs(theta, settings, csv, out);
        if (*chain) return cmd_chain(theta, eps_chain, csv, out);
        if (*correlations) return cmd_correlations(theta, eps_residual, csv, out);
        if (*hv_enum) return cmd_hv_enum(theta, eps_cells, csv, out);
        if (*check)
            return cmd_check(path, semantics,
                             theta_opt->count() ? std::optional<double>(theta_override)
                                                : std::nullopt,
                             csv, out, err);
        if (*sample) return cmd_sample(theta, settings, n, seed, csv, out);
        if (*sweep) return cmd_sweep(theta_min, theta_max, steps, csv, out);
    } catch (const UsageError& e) {
        err << e.message << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const IndexError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const ZeroVectorError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const UndefinedConditionalError& e) {
        err << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}

}  // namespace qhardy
