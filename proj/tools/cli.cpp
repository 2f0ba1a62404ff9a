#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef PROCFRAME_CLI11_SINGLE_HEADER
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "procframe/error.hpp"
#include "procframe/formats.hpp"
#include "procframe/frame.hpp"
#include "procframe/miner.hpp"
#include "procframe/rigidity.hpp"

namespace procframe::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag combinations discovered after parsing.
struct UsageError : Error {
    using Error::Error;
};

std::string extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

// Any model file as an open-world automaton over its own alphabet.
Dfa load_model(const fs::path& path) {
    const std::string ext = extension(path);
    const std::string name = path.stem().string();
    if (ext == ".json") return global_dfa(load_frame(path));
    if (ext == ".decl") return spec_dfa(Specification::declare(name, read_declare(path)));
    if (ext == ".dfa") return spec_dfa(Specification::raw(name, read_dfa(path)));
    return spec_dfa(Specification::net(name, read_net(path)));
}

std::string join(const std::vector<Activity>& acts) {
    std::string out;
    for (const auto& a : acts) out += (out.empty() ? "" : ",") + a;
    return out;
}

std::string describe(const DetectedFragment& f) {
    std::string branches;
    for (const auto& b : f.branches) branches += "[" + join(b) + "]";
    return std::string(construct_name(f.construct)) + " " + std::string(variant_name(f.variant)) + " pred=[" +
           join(f.predecessors) + "] branches=" + branches + " follow=[" + join(f.followers) +
           "] consumed=" + std::to_string(f.consumed.size());
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::vector<TemplateKind> parse_templates(const std::string& list) {
    std::vector<TemplateKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto k = kind_from_name(item);
        if (!k) throw UsageError("unknown template " + item);
        out.push_back(*k);
    }
    return out;
}

struct MineArgs {
    std::string log;
    std::string templates;
    bool no_ternary = false;
    std::vector<std::string> start;
    bool no_start = false;
    std::string output;
};

struct DetectArgs {
    std::string log;
    std::string constraints;
    bool mine = false;
    std::string start = std::string(kDefaultStartActivity);
    bool no_start = false;
    unsigned revisits = 2;
    std::string output;
};

struct GenLogArgs {
    std::string model;
    unsigned revisits = 2;
    std::string output;
    std::string format;
};

struct CheckArgs {
    std::string manifest;
    std::string log;
};

struct EquivArgs {
    std::string first;
    std::string second;
};

struct ComposeArgs {
    std::string manifest;
    std::string output;
};

struct DotArgs {
    std::string model;
    bool hide_trap = false;
    std::string output;
};

int do_mine(const MineArgs& a, std::ostream& out) {
    MinerConfig cfg;
    if (!a.templates.empty()) cfg.templates = parse_templates(a.templates);
    cfg.ternary_enabled = !a.no_ternary;
    if (!a.start.empty() && a.no_start) throw UsageError("--start and --no-start exclude each other");
    if (!a.start.empty()) {
        cfg.include_start = true;
        if (!a.start.front().empty()) cfg.start = a.start.front();
    }
    const MinedModel model = mine(read_log(a.log), cfg);
    if (a.output.empty()) {
        out << format_declare(model.constraints);
    } else {
        write_declare(a.output, model.constraints);
        out << model.constraints.size() << " constraints written to " << a.output << "\n";
    }
    return kOk;
}

int do_detect(const DetectArgs& a, std::ostream& out) {
    if (a.mine == !a.constraints.empty()) throw UsageError("detect needs either a constraint file or --mine");
    const EventLog log = read_log(a.log);
    std::optional<Activity> start;
    if (!a.no_start) start = a.start;

    MinedModel model;
    if (a.mine) {
        MinerConfig cfg;
        cfg.include_start = start.has_value();
        if (start) cfg.start = *start;
        model = mine(log, cfg);
    } else {
        model.constraints = read_declare(a.constraints);
        std::sort(model.constraints.begin(), model.constraints.end());
        model.alphabet = log.alphabet();
        for (const auto& c : model.constraints) model.alphabet.insert(c.args().begin(), c.args().end());
        if (start && std::none_of(model.constraints.begin(), model.constraints.end(), [&](const Constraint& c) {
                const auto& args = c.args();
                return std::find(args.begin(), args.end(), *start) != args.end();
            })) {
            start.reset();
        }
    }

    DetectOptions opts;
    opts.start = start;
    opts.revisit_bound = a.revisits;
    const FrameRewrite rw = detect(model, log, opts);

    std::ostringstream report;
    report << "equivalent: " << (rw.equivalent() ? "yes" : "no") << "\n";
    if (rw.counterexample) report << "counterexample: " << format_trace(*rw.counterexample) << "\n";
    for (std::size_t i = 0; i < rw.fragments.size(); ++i) {
        report << "fragment" << i + 1 << ": " << describe(rw.fragments[i]) << "\n";
    }
    for (const auto& f : rw.rejected) {
        report << "rejected: " << describe(f) << (f.approximate ? " approximate" : "");
        if (f.counterexample) report << " counterexample=" << format_trace(*f.counterexample);
        report << "\n";
    }
    report << "residual: " << rw.residual.size() << " constraints\n";

    const fs::path dir(a.output);
    fs::create_directories(dir);
    save_frame(dir / "frame.json", rw.frame);
    write_text(dir / "report.txt", report.str());
    out << report.str();
    return rw.equivalent() ? kOk : kNegative;
}

int do_gen_log(const GenLogArgs& a, std::ostream& out) {
    const EventLog log(enumerate(load_model(a.model), a.revisits));
    std::optional<LogFormat> format;
    if (!a.format.empty()) {
        format = log_format_from_name(a.format);
        if (!format) throw UsageError("unknown log format " + a.format);
    }
    if (a.output.empty()) {
        write_log(out, log, format.value_or(LogFormat::Lines));
    } else {
        write_log(a.output, log, format);
    }
    return kOk;
}

int do_check(const CheckArgs& a, std::ostream& out) {
    const ProcessFrame frame = load_frame(a.manifest);
    const EventLog log = read_log(a.log);
    std::size_t rejected = 0;
    for (std::size_t i = 0; i < log.size(); ++i) {
        const Trace& t = log.traces()[i];
        out << i + 1 << " " << format_trace(t) << " ";
        try {
            const auto v = first_violation(frame, t);
            if (!v) {
                out << "accepted\n";
                continue;
            }
            out << "rejected by " << v->spec;
            if (v->constraint) out << " " << v->constraint->to_string();
            out << "\n";
        } catch (const UnknownActivity& e) {
            out << "rejected: " << e.what() << "\n";
        }
        ++rejected;
    }
    return rejected == 0 ? kOk : kNegative;
}

int do_equiv(const EquivArgs& a, std::ostream& out) {
    const auto cx = find_counterexample(load_model(a.first), load_model(a.second));
    if (!cx) {
        out << "equivalent\n";
        return kOk;
    }
    out << "not equivalent; counterexample " << format_trace(*cx) << "\n";
    return kNegative;
}

int do_compose(const ComposeArgs& a, std::ostream& out) {
    const Dfa dfa = global_dfa(load_frame(a.manifest));
    if (a.output.empty()) {
        out << format_dfa(dfa);
    } else {
        write_dfa(a.output, dfa);
    }
    return kOk;
}

int do_export_dot(const DotArgs& a, std::ostream& out) {
    const fs::path path(a.model);
    const std::string ext = extension(path);
    std::string dot;
    if (ext == ".json") {
        dot = frame_to_dot(load_frame(path), a.hide_trap);
    } else if (ext == ".net" || ext == ".pnml") {
        dot = net_to_dot(read_net(path), path.stem().string());
    } else {
        dot = to_dot(load_model(path), a.hide_trap, path.stem().string());
    }
    if (a.output.empty()) {
        out << dot;
    } else {
        write_text(a.output, dot);
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Process frames: mining, detection and composition of process specifications", "procframe"};
    app.require_subcommand(1);

    MineArgs mine_args;
    auto* mine_cmd = app.add_subcommand("mine", "Mine Declare constraints from an event log");
    mine_cmd->add_option("log", mine_args.log, "Event log (.xes, .csv or lines)")->required()->check(CLI::ExistingFile);
    mine_cmd->add_option("--templates", mine_args.templates, "Comma-separated template names");
    mine_cmd->add_flag("--ternary,!--no-ternary", [&](std::int64_t n) { mine_args.no_ternary = n < 0; },
                       "Mine Interposition and BalancedEnablement (default on)");
    mine_cmd->add_option("--start", mine_args.start, "Prepend an artificial start activity (default name __START__)")
        ->expected(0, 1)
        ->default_str(std::string(kDefaultStartActivity));
    mine_cmd->add_flag("--no-start", mine_args.no_start, "Do not prepend a start activity (default)");
    mine_cmd->add_option("-o,--output", mine_args.output, "Constraint file; stdout when omitted");

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect", "Rewrite mined constraints into net fragments and validate");
    detect_cmd->add_option("log", detect_args.log, "Event log")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("constraints", detect_args.constraints, "Mined constraints (.decl)")->check(CLI::ExistingFile);
    detect_cmd->add_flag("--mine", detect_args.mine, "Mine the log instead of reading constraints");
    detect_cmd->add_option("--start", detect_args.start, "Name of the start activity")->capture_default_str();
    detect_cmd->add_flag("--no-start", detect_args.no_start, "Run without a start activity");
    detect_cmd->add_option("--revisits", detect_args.revisits, "Revisit bound of the Or post-check")->capture_default_str();
    detect_cmd->add_option("-o,--output", detect_args.output, "Output directory")->required();

    GenLogArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen-log", "Generate the log of all traces within a revisit bound");
    gen_cmd->add_option("model", gen_args.model, "Net, automaton, constraints or frame manifest")
        ->required()
        ->check(CLI::ExistingFile);
    gen_cmd->add_option("--revisits,-k", gen_args.revisits, "Maximum extra visits per automaton state")
        ->capture_default_str();
    gen_cmd->add_option("-o,--output", gen_args.output, "Log file; stdout when omitted");
    gen_cmd->add_option("--format", gen_args.format, "lines, csv or xes; by extension when omitted");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Check every trace of a log against a frame");
    check_cmd->add_option("manifest", check_args.manifest, "Frame manifest")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("log", check_args.log, "Event log")->required()->check(CLI::ExistingFile);

    EquivArgs equiv_args;
    auto* equiv_cmd = app.add_subcommand("equiv", "Compare the languages of two models");
    equiv_cmd->add_option("model1", equiv_args.first)->required()->check(CLI::ExistingFile);
    equiv_cmd->add_option("model2", equiv_args.second)->required()->check(CLI::ExistingFile);

    ComposeArgs compose_args;
    auto* compose_cmd = app.add_subcommand("compose", "Write the global automaton of a frame");
    compose_cmd->add_option("manifest", compose_args.manifest)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("-o,--output", compose_args.output, "Automaton file; stdout when omitted");

    DotArgs dot_args;
    auto* dot_cmd = app.add_subcommand("export-dot", "Render a model as Graphviz");
    dot_cmd->add_option("model", dot_args.model)->required()->check(CLI::ExistingFile);
    dot_cmd->add_flag("--hide-trap", dot_args.hide_trap, "Omit the trap state and arcs into it");
    dot_cmd->add_option("-o,--output", dot_args.output, "DOT file; stdout when omitted");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*mine_cmd) return do_mine(mine_args, out);
        if (*detect_cmd) return do_detect(detect_args, out);
        if (*gen_cmd) return do_gen_log(gen_args, out);
        if (*check_cmd) return do_check(check_args, out);
        if (*equiv_cmd) return do_equiv(equiv_args, out);
        if (*compose_cmd) return do_compose(compose_args, out);
        if (*dot_cmd) return do_export_dot(dot_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace procframe::cli
