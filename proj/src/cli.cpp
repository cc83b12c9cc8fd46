#include "obsprob/cli.hpp"

#include "obsprob/extension.hpp"
#include "obsprob/io.hpp"
#include "obsprob/scenarios.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace obsprob {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;
constexpr int exit_infeasible = 3;

ObservedDistribution load_observed(const std::string& path) {
    return observed_from_json(parse_json_text(read_text_file(path)));
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- check

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
    const ObservedDistribution obs = load_observed(path);
    out << "outcomes: " << obs.frame.space->size() << '\n';
    out << "ensembles: " << obs.frame.ensembles.size() << '\n';
    const ValidationReport report = validate_observed(obs);
    if (!report.ok) {
        err << "invalid: " << report.message << '\n';
        return exit_invalid;
    }
    out << "ok\n";
    return exit_ok;
}

// --------------------------------------------------------------- extend

const char* status_word(SolveStatus status) {
    switch (status) {
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unique: return "unique";
        case SolveStatus::family: return "family";
    }
    return "?";
}

int cmd_extend(const std::string& path, const std::string& mode, bool as_json,
               std::ostream& out, std::ostream& err) {
    const ObservedDistribution raw = load_observed(path);
    const ValidationReport report = validate_observed(raw);
    if (!report.ok) {
        err << "invalid: " << report.message << '\n';
        return exit_invalid;
    }
    const ObservedDistribution obs = normalize_fat_outcomes(raw);
    const LinearSystem sys = build_system(obs);

    ExtensionResult result;
    if (mode == "signed") {
        result = solve_signed(sys);
    } else if (mode == "traditional") {
        result = solve_traditional(sys);
    } else {
        try {
            result = minimize_negativity(sys);
        } catch (const std::invalid_argument&) {
            // No signed solution at all, so no negativity to minimize.
            result.status = SolveStatus::infeasible;
        }
    }

    const bool feasible = result.status != SolveStatus::infeasible;
    if (as_json) {
        Json doc;
        doc["status"] = status_word(result.status);
        doc["nullspace_dimension"] = result.nullspace.size();
        if (result.witness) {
            doc["witness"] = weights_to_json(to_distribution(sys, *result.witness));
        }
        if (result.negative_mass) {
            doc["negative_mass"] = format_scalar(*result.negative_mass);
        }
        if (result.certificate) {
            Json cert = Json::object();
            for (std::size_t i = 0; i < result.certificate->size(); ++i) {
                cert[sys.row_names[i]] = format_scalar((*result.certificate)[i]);
            }
            doc["certificate"] = std::move(cert);
        }
        print_json(out, doc);
    } else {
        out << "status: " << status_word(result.status) << '\n';
        out << "nullspace dimension: " << result.nullspace.size() << '\n';
        if (result.negative_mass) {
            out << "negative mass: " << format_scalar(*result.negative_mass) << '\n';
        }
        if (result.witness) {
            out << "witness:\n";
            for (std::size_t i = 0; i < sys.space->size(); ++i) {
                out << "  " << sys.space->label(i) << " = "
                    << format_scalar((*result.witness)[i]) << '\n';
            }
        }
        if (result.certificate) {
            out << "certificate:\n";
            for (std::size_t i = 0; i < result.certificate->size(); ++i) {
                out << "  " << sys.row_names[i] << " = "
                    << format_scalar((*result.certificate)[i]) << '\n';
            }
        }
    }
    return feasible ? exit_ok : exit_infeasible;
}

// ------------------------------------------------------------- scenario

int cmd_scenario(const std::string& name, const std::optional<std::vector<int>>& angles,
                 std::ostream& out, std::ostream& err) {
    std::optional<ScenarioBundle> bundle;
    try {
        bundle = scenario_by_name(name, angles);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (!bundle) {
        err << "error: unknown scenario '" + name + "' (try piponi, bell, hardy, hardy-hidden)\n";
        return exit_usage;
    }
    print_json(out, observed_to_json(bundle->observed));
    return exit_ok;
}

// ----------------------------------------------------------- symmetrize

// One permutation written as cycles of outcome labels, e.g.
// "(+++ ---)(++- --+)"; unlisted outcomes stay fixed, "()" or an empty
// string is the identity. Throws FileError when the text is not a
// bijection over the space.
Permutation parse_cycles(const std::string& text, const SampleSpace& space) {
    Permutation perm = identity_permutation(space.size());
    std::vector<bool> moved(space.size(), false);
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw FileError("permutation: expected '(' in \"" + text + "\"");
        ++i;
        std::vector<std::size_t> cycle;
        while (true) {
            skip_ws();
            if (i >= text.size()) {
                throw FileError("permutation: unterminated cycle in \"" + text + "\"");
            }
            if (text[i] == ')') {
                ++i;
                break;
            }
            std::string label;
            while (i < text.size() && text[i] != ')' &&
                   !std::isspace(static_cast<unsigned char>(text[i]))) {
                label += text[i++];
            }
            const auto index = space.find(label);
            if (!index) throw FileError("permutation: unknown outcome '" + label + "'");
            if (moved[*index]) {
                throw FileError("permutation: outcome '" + label +
                                "' appears twice, not a bijection");
            }
            moved[*index] = true;
            cycle.push_back(*index);
        }
        for (std::size_t k = 0; k + 1 < cycle.size(); ++k) perm[cycle[k]] = cycle[k + 1];
        if (cycle.size() > 1) perm[cycle.back()] = cycle.front();
        skip_ws();
    }
    return perm;
}

int cmd_symmetrize(const std::string& space_path, const std::string& ext_path, bool auto_group,
                   const std::vector<std::string>& perm_texts, std::ostream& out,
                   std::ostream& err) {
    const ObservedDistribution raw = load_observed(space_path);
    const ValidationReport report = validate_observed(raw);
    if (!report.ok) {
        err << "invalid: " << report.message << '\n';
        return exit_invalid;
    }
    const ObservedDistribution obs = normalize_fat_outcomes(raw);
    const SpacePtr space = obs.frame.space;

    const SignedDistribution q(space,
                               weights_from_json(parse_json_text(read_text_file(ext_path)), space));

    std::vector<Permutation> group;
    if (auto_group) {
        group = enumerate_automorphisms(obs);
        err << "automorphism group size: " << group.size() << '\n';
    } else {
        std::vector<Permutation> generators;
        for (const std::string& text : perm_texts) {
            Permutation perm = parse_cycles(text, *space);
            const ValidationReport check = check_automorphism(obs, perm);
            if (!check.ok) {
                err << "invalid: permutation \"" << text << "\": " << check.message << '\n';
                return exit_invalid;
            }
            generators.push_back(std::move(perm));
        }
        group = generate_group(generators, space->size());
        err << "generated group size: " << group.size() << '\n';
    }

    const SignedDistribution averaged = symmetrize(obs, q, group);
    print_json(out, weights_to_json(averaged));
    return exit_ok;
}

// ------------------------------------------------------------------- ks

int cmd_ks(const std::optional<std::string>& path, std::ostream& out, std::ostream& err) {
    const BasisSystem system =
        path ? bases_from_json(parse_json_text(read_text_file(*path))) : cabello18();

    const StructuralReport report = validate_system(system);
    out << "bases: " << report.basis_count << '\n';
    out << "distinct rays: " << report.rays.size() << '\n';
    out << "every ray in exactly two bases: " << (report.every_ray_twice ? "yes" : "no") << '\n';
    out << "18-ray/9-basis profile: " << (report.eighteen_nine_profile ? "yes" : "no") << '\n';

    if (!report.all_orthogonal) {
        for (std::size_t b = 0; b < report.basis_orthogonal.size(); ++b) {
            if (!report.basis_orthogonal[b]) {
                err << "invalid: basis " << b << " is not orthogonal\n";
            }
        }
        return exit_invalid;
    }

    switch (parity_obstruction(system)) {
        case ParityVerdict::obstruction:
            out << "parity: obstruction (each ray twice, odd basis count)\n";
            break;
        case ParityVerdict::no_obstruction:
            out << "parity: no obstruction\n";
            break;
        case ParityVerdict::not_applicable:
            out << "parity: not applicable\n";
            break;
    }

    const auto selections = find_selections(system);
    out << "selections: " << selections.size() << '\n';
    for (const Selection& sel : selections) {
        out << "selection:";
        for (std::size_t pick : sel) out << ' ' << pick;
        out << '\n';
    }
    out << "model exists: " << (selections.empty() ? "no" : "yes") << '\n';
    return selections.empty() ? exit_infeasible : exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact toolkit for signed probability extensions over finite observation spaces",
                 "obsprob"};
    app.require_subcommand(1);

    std::string check_file;
    CLI::App* check = app.add_subcommand("check", "validate an observation-space file");
    check->add_option("file", check_file, "observation-space JSON file")->required();

    std::string extend_file;
    std::string extend_mode;
    bool extend_json = false;
    CLI::App* extend = app.add_subcommand("extend", "solve the extension problem for a file");
    extend->add_option("file", extend_file, "observation-space JSON file")->required();
    extend->add_option("--mode", extend_mode, "signed | traditional | min-negativity")
        ->required()
        ->check(CLI::IsMember({"signed", "traditional", "min-negativity"}));
    extend->add_flag("--json", extend_json, "machine-readable output");

    std::string scenario_name;
    std::vector<int> scenario_angles;
    CLI::App* scenario = app.add_subcommand("scenario", "emit a built-in observation space");
    scenario->add_option("name", scenario_name, "piponi | bell | hardy | hardy-hidden")
        ->required();
    CLI::Option* angles_opt =
        scenario->add_option("--angles", scenario_angles, "bell analyzer angles, in eighths of pi")
            ->delimiter(',');

    std::string sym_space;
    std::string sym_ext;
    bool sym_auto = false;
    std::vector<std::string> sym_perms;
    CLI::App* symmetrize = app.add_subcommand("symmetrize", "group-average an extension");
    symmetrize->add_option("space", sym_space, "observation-space JSON file")->required();
    symmetrize->add_option("extension", sym_ext, "extension JSON file")->required();
    CLI::Option* auto_opt =
        symmetrize->add_flag("--auto", sym_auto, "average over all automorphisms");
    symmetrize->add_option("--perm", sym_perms, "permutation as cycles of outcome labels")
        ->excludes(auto_opt);

    std::optional<std::string> ks_file;
    CLI::App* ks = app.add_subcommand("ks", "uncolorability check for a basis system");
    std::string ks_path;
    CLI::Option* ks_opt = ks->add_option("--file", ks_path, "basis-system JSON file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*check) return cmd_check(check_file, out, err);
        if (*extend) return cmd_extend(extend_file, extend_mode, extend_json, out, err);
        if (*scenario) {
            std::optional<std::vector<int>> angles;
            if (angles_opt->count() > 0) angles = scenario_angles;
            return cmd_scenario(scenario_name, angles, out, err);
        }
        if (*symmetrize) {
            if (!sym_auto && sym_perms.empty()) {
                err << "error: symmetrize needs --auto or at least one --perm\n";
                return exit_usage;
            }
            return cmd_symmetrize(sym_space, sym_ext, sym_auto, sym_perms, out, err);
        }
        if (*ks) {
            if (ks_opt->count() > 0) ks_file = ks_path;
            return cmd_ks(ks_file, out, err);
        }
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "invalid: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_usage;
}

}  // namespace obsprob
