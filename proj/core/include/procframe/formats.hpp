#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "procframe/automata.hpp"
#include "procframe/core.hpp"
#include "procframe/declare.hpp"
#include "procframe/frame.hpp"
#include "procframe/petri.hpp"

namespace procframe {

// Event logs ---------------------------------------------------------------

enum class LogFormat { Lines, Csv, Xes };

/// `.xes` and `.csv` by extension, anything else is the lines format.
LogFormat log_format_for(const std::filesystem::path& path);
std::optional<LogFormat> log_format_from_name(std::string_view name);

/// Lines: one trace per line, activities separated by `,`; an empty line is the empty
/// trace and a single trailing newline ends the last trace.
/// CSV: header `case_id,activity`, rows grouped by case id in order of first appearance.
/// XES: `<trace>` elements whose `<event>`s carry a `concept:name` string attribute.
EventLog parse_log(std::istream& in, LogFormat format, const std::string& source = "");
EventLog read_log(const std::filesystem::path& path, std::optional<LogFormat> format = std::nullopt);

/// CSV cannot represent empty traces; they are dropped.
void write_log(std::ostream& out, const EventLog& log, LogFormat format);
void write_log(const std::filesystem::path& path, const EventLog& log,
               std::optional<LogFormat> format = std::nullopt);

// Declare text -------------------------------------------------------------

/// One `Template[A,B]` per line; counting templates carry their count, e.g. `Existence2[A]`
/// (a missing count means 1). Blank lines and `#` comments are ignored.
std::vector<Constraint> parse_declare(std::istream& in, const std::string& source = "");
Constraint parse_constraint(std::string_view text, const std::string& source = "");
std::vector<Constraint> read_declare(const std::filesystem::path& path);

/// Sorted lines, each terminated by a newline.
std::string format_declare(const std::vector<Constraint>& constraints);
void write_declare(const std::filesystem::path& path, const std::vector<Constraint>& constraints);

// Petri nets ---------------------------------------------------------------

/// Native format, sections `places:`, `transitions:`, `arcs:`, `initial:`, `final:` with
/// one item per line. See docs/formats.md.
PetriNet parse_net(std::istream& in, const std::string& source = "");
std::string format_net(const PetriNet& net);

/// PNML place/transition subset. Silent transitions carry a ProM-style `$invisible$`
/// tool-specific element; final markings live in a tool-specific `finalMarkings` element.
PetriNet parse_pnml(std::istream& in, const std::string& source = "");
std::string format_pnml(const PetriNet& net);

/// Chooses PNML for `.pnml`, the native format otherwise.
PetriNet read_net(const std::filesystem::path& path);
void write_net(const std::filesystem::path& path, const PetriNet& net);

// Automata -----------------------------------------------------------------

/// `symbols:`, `states:`, `initial:`, `accepting:` headers followed by one row per state,
/// `s: succ,succ,... | default`.
Dfa parse_dfa(std::istream& in, const std::string& source = "");
std::string format_dfa(const Dfa& dfa);
Dfa read_dfa(const std::filesystem::path& path);
void write_dfa(const std::filesystem::path& path, const Dfa& dfa);

// Frame manifests ------------------------------------------------------------

enum class SpecKind { Declare, Net, Dfa };

struct ManifestEntry {
    std::string name;
    SpecKind kind{};
    std::optional<ActivitySet> alphabet;
    std::filesystem::path path;  // relative paths resolve against the manifest directory
};

struct FrameManifest {
    std::vector<ManifestEntry> entries;
};

/// JSON object `{"specs": [{"name", "kind", "path", "alphabet"?}, ...]}`.
FrameManifest parse_manifest(std::istream& in, const std::string& source = "");
std::string format_manifest(const FrameManifest& manifest);

/// Reads the manifest and every referenced file.
ProcessFrame load_frame(const std::filesystem::path& manifest_path);

/// Writes one file per specification next to the manifest and the manifest itself.
void save_frame(const std::filesystem::path& manifest_path, const ProcessFrame& frame);

// Graphviz -------------------------------------------------------------------

std::string frame_to_dot(const ProcessFrame& frame, bool hide_trap = true);

}  // namespace procframe
