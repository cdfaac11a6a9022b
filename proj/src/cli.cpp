#include "mtskit/cli.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/io.hpp"
#include "mtskit/metrics.hpp"
#include "mtskit/nu.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace mtskit {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
    bool json = false;
    bool timing = false;
    std::optional<uint64_t> seed; // reserved for generator-backed commands
    std::vector<std::string> widen;
};

struct Output {
    const GlobalOptions &global;
    std::ostream &out;
    Json payload;

    explicit Output(const GlobalOptions &global, std::ostream &out, const std::string &command)
        : global(global), out(out) {
        payload["schema"] = 1;
        payload["command"] = command;
        if (global.seed)
            payload["seed"] = *global.seed;
    }

    void emit(const std::string &text, double elapsed_ms) {
        if (global.json) {
            if (global.timing)
                payload["timing_ms"] = elapsed_ms;
            out << payload.dump() << "\n";
        } else {
            out << text;
            if (!text.empty() && text.back() != '\n')
                out << "\n";
            if (global.timing)
                out << "# elapsed_ms " << elapsed_ms << "\n";
        }
    }
};

Json distance_json(const DyadicDistance &d) {
    Json j;
    if (d.is_zero()) {
        j["kind"] = "zero";
    } else {
        j["kind"] = "dyadic";
        j["n"] = d.exponent();
    }
    return j;
}

Json estimate_json(const IntervalEstimate &e) {
    Json j;
    j["lower"] = distance_json(e.lower);
    j["upper"] = distance_json(e.upper);
    j["exact"] = e.exact;
    return j;
}

std::string estimate_text(const IntervalEstimate &e) {
    if (e.exact)
        return e.lower.str();
    return "[" + e.lower.str() + ", " + e.upper.str() + "]";
}

PointedSystem load_system(const std::string &path, const GlobalOptions &global,
                          const std::string &state) {
    std::ifstream file(path);
    if (!file)
        throw Error("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    PointedSystem p = parse_system(buffer.str());
    if (!global.widen.empty())
        p.system = p.system.with_alphabet(p.system.alphabet().widened(global.widen));
    if (!state.empty())
        p = repointed(p, state);
    return p;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

EventAlphabet alphabet_from_option(const std::string &spec) {
    std::istringstream words(spec);
    std::vector<std::string> events;
    std::string word;
    while (words >> word)
        events.push_back(word);
    return EventAlphabet(events);
}

std::vector<std::string> trace_from_option(const std::string &spec) {
    std::istringstream words(spec);
    std::vector<std::string> trace;
    std::string word;
    while (words >> word)
        trace.push_back(word);
    return trace;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"mtskit - refinement, model checking and distances for modal transition systems"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_flag("--json", global.json, "machine-readable output");
    app.add_flag("--timing", global.timing, "report elapsed time (output is no longer byte-stable)");
    uint64_t seed_value = 0;
    auto *seed_opt =
        app.add_option("--seed", seed_value, "seed for generator-backed commands (echoed)");
    app.add_option("--widen-alphabet", global.widen,
                   "extra events appended to every loaded system's alphabet")
        ->delimiter(' ');

    struct Cmd {
        CLI::App *sub = nullptr;
        std::string file_a, file_b, state, state_a, state_b;
        std::string formula, mode = "a", term, alphabet, trace, event, output;
        int depth = 0;
        bool as_term = false, nu = false;
    };

    auto add_two_file = [&](const std::string &name, const std::string &help) {
        Cmd cmd;
        cmd.sub = app.add_subcommand(name, help);
        return cmd;
    };

    Cmd refines_cmd = add_two_file("refines", "does CONCRETE refine ABSTRACT?");
    refines_cmd.sub->add_option("abstract", refines_cmd.file_a)->required();
    refines_cmd.sub->add_option("concrete", refines_cmd.file_b)->required();

    Cmd equiv_cmd = add_two_file("equiv", "refinement equivalence");
    Cmd depth_cmd = add_two_file("depth", "exact equivalence depth (inf when equivalent)");
    Cmd distance_cmd = add_two_file("distance", "dyadic refinement distance");
    Cmd consistent_cmd = add_two_file("consistent", "do the systems have a common refinement?");
    Cmd c1_cmd = add_two_file("c1", "optimistic consistency measure");
    Cmd witness_cmd = add_two_file("witness", "common-refinement witness");
    Cmd c2_cmd = add_two_file("c2", "pessimistic measure over depth-K implementations");
    Cmd hausdorff_cmd = add_two_file("hausdorff", "Hausdorff lift over depth-K implementations");
    Cmd distinguish_cmd = add_two_file("distinguish", "formula telling ABSTRACT from CONCRETE");
    for (Cmd *cmd : {&equiv_cmd, &depth_cmd, &distance_cmd, &consistent_cmd, &c1_cmd, &witness_cmd,
                     &c2_cmd, &hausdorff_cmd}) {
        cmd->sub->add_option("a", cmd->file_a)->required();
        cmd->sub->add_option("b", cmd->file_b)->required();
    }
    distinguish_cmd.sub->add_option("abstract", distinguish_cmd.file_a)->required();
    distinguish_cmd.sub->add_option("concrete", distinguish_cmd.file_b)->required();
    for (Cmd *cmd : {&refines_cmd, &equiv_cmd, &depth_cmd, &distance_cmd, &consistent_cmd, &c1_cmd,
                     &witness_cmd, &c2_cmd, &hausdorff_cmd, &distinguish_cmd}) {
        cmd->sub->add_option("--state-a", cmd->state_a, "initial state override, first file");
        cmd->sub->add_option("--state-b", cmd->state_b, "initial state override, second file");
    }
    c2_cmd.sub->add_option("--depth", c2_cmd.depth, "implementation depth bound K")->required();
    hausdorff_cmd.sub->add_option("--depth", hausdorff_cmd.depth, "implementation depth bound K")
        ->required();
    witness_cmd.sub->add_option("-o,--output", witness_cmd.output, "write the witness here");

    Cmd check_cmd;
    check_cmd.sub = app.add_subcommand("check", "model check a formula");
    check_cmd.sub->add_option("--mode", check_cmd.mode, "a, c or 3")
        ->check(CLI::IsMember({"a", "c", "3"}));
    check_cmd.sub->add_option("--formula", check_cmd.formula)->required();
    check_cmd.sub->add_option("file", check_cmd.file_a)->required();

    Cmd mc_cmd;
    mc_cmd.sub = app.add_subcommand("mc-check", "does the system satisfy the mix condition?");
    mc_cmd.sub->add_option("file", mc_cmd.file_a)->required();

    Cmd normalize_cmd;
    normalize_cmd.sub = app.add_subcommand("normalize", "mixed-to-modal normalization");
    normalize_cmd.sub->add_option("file", normalize_cmd.file_a)->required();

    Cmd unfold_cmd;
    unfold_cmd.sub = app.add_subcommand("unfold", "depth-m unfolding with may-stubs");
    unfold_cmd.sub->add_option("file", unfold_cmd.file_a)->required();
    unfold_cmd.sub->add_option("-m,--depth", unfold_cmd.depth, "unfolding depth")->required();
    unfold_cmd.sub->add_flag("--as-term", unfold_cmd.as_term, "print the term, not its system");

    Cmd charformula_cmd;
    charformula_cmd.sub = app.add_subcommand("charformula", "characteristic formula");
    charformula_cmd.sub->add_option("file", charformula_cmd.file_a);
    charformula_cmd.sub->add_flag("--nu", charformula_cmd.nu,
                                  "greatest-fixed-point formula of a system");
    charformula_cmd.sub->add_option("--term", charformula_cmd.term, "MPA term");
    charformula_cmd.sub->add_option("--alphabet", charformula_cmd.alphabet,
                                    "events, space separated (with --term)");

    Cmd probe_cmd;
    probe_cmd.sub = app.add_subcommand("probe", "maximality probe formula");
    probe_cmd.sub->add_option("--trace", probe_cmd.trace, "box prefix, space separated");
    probe_cmd.sub->add_option("--event", probe_cmd.event)->required();
    probe_cmd.sub->add_option("--term", probe_cmd.term)->required();
    probe_cmd.sub->add_option("--alphabet", probe_cmd.alphabet)->required();

    Cmd implementation_cmd;
    implementation_cmd.sub = app.add_subcommand("implementation", "must-projection");
    implementation_cmd.sub->add_option("file", implementation_cmd.file_a)->required();

    Cmd ltsequiv_cmd;
    ltsequiv_cmd.sub = app.add_subcommand(
        "is-ltsequiv", "is the system refinement-equivalent to a labelled transition system?");
    ltsequiv_cmd.sub->add_option("file", ltsequiv_cmd.file_a)->required();

    for (Cmd *cmd : {&check_cmd, &mc_cmd, &normalize_cmd, &unfold_cmd, &charformula_cmd,
                     &implementation_cmd, &ltsequiv_cmd}) {
        cmd->sub->add_option("--state", cmd->state, "initial state override");
    }

    std::vector<std::string> argv_store{"mtskit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &arg : argv_store)
        argv.push_back(arg.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) { // --help and friends
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (seed_opt->count())
        global.seed = seed_value;

    const auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         started)
            .count();
    };

    try {
        auto load_a = [&](const Cmd &cmd) { return load_system(cmd.file_a, global, cmd.state_a); };
        auto load_b = [&](const Cmd &cmd) { return load_system(cmd.file_b, global, cmd.state_b); };
        auto load_single = [&](const Cmd &cmd) {
            return load_system(cmd.file_a, global, cmd.state);
        };

        if (*refines_cmd.sub) {
            bool result = refines(load_a(refines_cmd), load_b(refines_cmd));
            Output output(global, out, "refines");
            output.payload["result"] = result;
            output.emit(yes_no(result), elapsed_ms());
            return 0;
        }
        if (*equiv_cmd.sub) {
            bool result = refinement_equivalent(load_a(equiv_cmd), load_b(equiv_cmd));
            Output output(global, out, "equiv");
            output.payload["result"] = result;
            output.emit(yes_no(result), elapsed_ms());
            return 0;
        }
        if (*depth_cmd.sub) {
            auto result = equivalence_depth(load_a(depth_cmd), load_b(depth_cmd));
            Output output(global, out, "depth");
            Json j;
            if (result) {
                j["kind"] = "finite";
                j["n"] = *result;
            } else {
                j["kind"] = "infinite";
            }
            output.payload["depth"] = j;
            output.emit(result ? std::to_string(*result) : "inf", elapsed_ms());
            return 0;
        }
        if (*distance_cmd.sub) {
            DyadicDistance d = distance(load_a(distance_cmd), load_b(distance_cmd));
            Output output(global, out, "distance");
            output.payload["distance"] = distance_json(d);
            output.emit(d.str(), elapsed_ms());
            return 0;
        }
        if (*check_cmd.sub) {
            PointedSystem p = load_single(check_cmd);
            FormulaArena arena;
            FormulaRef formula = parse_formula(check_cmd.formula, arena);
            Output output(global, out, "check");
            std::string verdict;
            if (check_cmd.mode == "3") {
                switch (check3(p, formula)) {
                case Verdict3::yes:
                    verdict = "true";
                    break;
                case Verdict3::no:
                    verdict = "false";
                    break;
                case Verdict3::unknown:
                    verdict = "unknown";
                    break;
                }
            } else {
                bool result =
                    check(p, formula, check_cmd.mode == "a" ? Mode::a : Mode::c);
                verdict = result ? "true" : "false";
            }
            output.payload["verdict"] = verdict;
            output.emit(verdict, elapsed_ms());
            return 0;
        }
        if (*mc_cmd.sub) {
            bool result = satisfies_mix_condition(load_single(mc_cmd).system);
            Output output(global, out, "mc-check");
            output.payload["result"] = result;
            output.emit(yes_no(result), elapsed_ms());
            return 0;
        }
        if (*normalize_cmd.sub) {
            PointedSystem normalized = normalize_mixed(load_single(normalize_cmd));
            Output output(global, out, "normalize");
            std::string text = print_system(normalized);
            output.payload["system"] = text;
            output.emit(text, elapsed_ms());
            return 0;
        }
        if (*consistent_cmd.sub) {
            PointedSystem p = load_a(consistent_cmd), q = load_b(consistent_cmd);
            bool result = consistency_relation(p.system, q.system).contains(p.init, q.init);
            Output output(global, out, "consistent");
            output.payload["result"] = result;
            output.emit(yes_no(result), elapsed_ms());
            return 0;
        }
        if (*witness_cmd.sub) {
            auto witness = common_refinement(load_a(witness_cmd), load_b(witness_cmd));
            Output output(global, out, "witness");
            output.payload["found"] = witness.has_value();
            if (!witness) {
                output.emit("no common refinement", elapsed_ms());
                return 0;
            }
            std::string text = print_system(*witness);
            if (!witness_cmd.output.empty()) {
                std::ofstream file(witness_cmd.output);
                if (!file)
                    throw Error("cannot write '" + witness_cmd.output + "'");
                file << text;
                output.payload["output"] = witness_cmd.output;
                output.emit("witness written to " + witness_cmd.output, elapsed_ms());
            } else {
                output.payload["system"] = text;
                output.emit(text, elapsed_ms());
            }
            return 0;
        }
        if (*c1_cmd.sub) {
            DyadicDistance d = c1(load_a(c1_cmd), load_b(c1_cmd));
            Output output(global, out, "c1");
            output.payload["distance"] = distance_json(d);
            output.emit(d.str(), elapsed_ms());
            return 0;
        }
        if (*c2_cmd.sub) {
            IntervalEstimate e = c2_bounded(load_a(c2_cmd), load_b(c2_cmd), c2_cmd.depth);
            Output output(global, out, "c2");
            output.payload["estimate"] = estimate_json(e);
            output.emit(estimate_text(e), elapsed_ms());
            return 0;
        }
        if (*hausdorff_cmd.sub) {
            IntervalEstimate e =
                hausdorff_bounded(load_a(hausdorff_cmd), load_b(hausdorff_cmd), hausdorff_cmd.depth);
            Output output(global, out, "hausdorff");
            output.payload["estimate"] = estimate_json(e);
            output.emit(estimate_text(e), elapsed_ms());
            return 0;
        }
        if (*unfold_cmd.sub) {
            PointedSystem p = load_single(unfold_cmd);
            TermArena arena;
            TermRef term = unfold(p, unfold_cmd.depth, arena);
            Output output(global, out, "unfold");
            if (unfold_cmd.as_term) {
                std::string text = print_term(term);
                output.payload["term"] = text;
                output.emit(text, elapsed_ms());
            } else {
                std::string text = print_system(operational_semantics(term, p.system.alphabet()));
                output.payload["system"] = text;
                output.emit(text, elapsed_ms());
            }
            return 0;
        }
        if (*charformula_cmd.sub) {
            Output output(global, out, "charformula");
            if (!charformula_cmd.term.empty()) {
                if (charformula_cmd.alphabet.empty())
                    throw Error("--term requires --alphabet");
                TermArena terms;
                FormulaArena formulas;
                EventAlphabet alphabet = alphabet_from_option(charformula_cmd.alphabet);
                TermRef term = parse_term(charformula_cmd.term, terms);
                std::string text = print_formula(char_formula(term, alphabet, formulas));
                output.payload["formula"] = text;
                output.emit(text, elapsed_ms());
                return 0;
            }
            if (charformula_cmd.file_a.empty() || !charformula_cmd.nu)
                throw Error("expected --term TERM --alphabet \"...\" or FILE --nu");
            std::string text = print_nu_formula(characteristic_nu(load_single(charformula_cmd)));
            output.payload["formula"] = text;
            output.emit(text, elapsed_ms());
            return 0;
        }
        if (*probe_cmd.sub) {
            TermArena terms;
            FormulaArena formulas;
            EventAlphabet alphabet = alphabet_from_option(probe_cmd.alphabet);
            TermRef term = parse_term(probe_cmd.term, terms);
            FormulaRef formula = phi_probe(trace_from_option(probe_cmd.trace), probe_cmd.event,
                                           term, alphabet, formulas);
            Output output(global, out, "probe");
            std::string text = print_formula(formula);
            output.payload["formula"] = text;
            output.emit(text, elapsed_ms());
            return 0;
        }
        if (*distinguish_cmd.sub) {
            FormulaArena arena;
            FormulaRef formula =
                distinguishing_formula(load_a(distinguish_cmd), load_b(distinguish_cmd), arena);
            Output output(global, out, "distinguish");
            std::string text = print_formula(formula);
            output.payload["formula"] = text;
            output.emit(text, elapsed_ms());
            return 0;
        }
        if (*implementation_cmd.sub) {
            PointedSystem projected = must_projection(load_single(implementation_cmd));
            Output output(global, out, "implementation");
            std::string text = print_system(projected);
            output.payload["system"] = text;
            output.emit(text, elapsed_ms());
            return 0;
        }
        if (*ltsequiv_cmd.sub) {
            bool result = is_implementation_equivalent(load_single(ltsequiv_cmd));
            Output output(global, out, "is-ltsequiv");
            output.payload["result"] = result;
            output.emit(yes_no(result), elapsed_ms());
            return 0;
        }
        err << "error: no command\n";
        return 1;
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace mtskit
