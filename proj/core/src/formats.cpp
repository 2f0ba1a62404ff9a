#include "procframe/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#ifdef PROCFRAME_JSON_SINGLE_HEADER
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif
#include "procframe/error.hpp"

namespace procframe {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string slurp(std::istream& in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
    return in;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    return out;
}

// Lines of a text, with the 1-based line number. A final newline does not start a line.
std::vector<std::pair<std::size_t, std::string>> lines_of(std::istream& in) {
    std::string text = slurp(in);
    std::vector<std::pair<std::size_t, std::string>> out;
    if (text.empty()) return out;
    if (text.back() == '\n') text.pop_back();
    std::size_t n = 0;
    for (auto part : split(text, '\n')) {
        if (!part.empty() && part.back() == '\r') part.remove_suffix(1);
        out.emplace_back(++n, std::string(part));
    }
    return out;
}

Activity parse_activity(std::string_view raw, const std::string& source, std::size_t line, std::size_t column) {
    const std::string_view name = trim(raw);
    if (!is_valid_activity(name)) {
        throw ParseError(source, line, column, "invalid activity name '" + std::string(name) + "'");
    }
    return Activity(name);
}

// Strips a `#` comment and surrounding blanks.
std::string_view content(std::string_view line) {
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return trim(line);
}

EventLog parse_lines_log(std::istream& in, const std::string& source) {
    std::vector<Trace> traces;
    for (const auto& [n, line] : lines_of(in)) {
        Trace t;
        if (!trim(line).empty()) {
            std::size_t column = 1;
            for (auto field : split(line, ',')) {
                t.push_back(parse_activity(field, source, n, column));
                column += field.size() + 1;
            }
        }
        traces.push_back(std::move(t));
    }
    return EventLog(std::move(traces));
}

EventLog parse_csv_log(std::istream& in, const std::string& source) {
    const auto lines = lines_of(in);
    if (lines.empty()) throw ParseError(source, 1, 1, "missing header 'case_id,activity'");
    {
        const auto header = split(lines.front().second, ',');
        if (header.size() != 2 || trim(header[0]) != "case_id" || trim(header[1]) != "activity") {
            throw ParseError(source, 1, 1, "expected header 'case_id,activity'");
        }
    }
    std::map<std::string, std::size_t> index;
    std::vector<Trace> traces;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [n, line] = lines[i];
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw ParseError(source, n, 1, "expected two fields");
        const std::string case_id(trim(fields[0]));
        if (case_id.empty()) throw ParseError(source, n, 1, "empty case id");
        const Activity a = parse_activity(fields[1], source, n, fields[0].size() + 2);
        auto [it, inserted] = index.emplace(case_id, traces.size());
        if (inserted) traces.emplace_back();
        traces[it->second].push_back(a);
    }
    return EventLog(std::move(traces));
}

std::optional<std::string> concept_name(const pt::ptree& node) {
    for (const auto& [tag, child] : node) {
        if (tag != "string") continue;
        if (child.get<std::string>("<xmlattr>.key", "") == "concept:name") {
            return child.get<std::string>("<xmlattr>.value", "");
        }
    }
    return std::nullopt;
}

EventLog parse_xes_log(std::istream& in, const std::string& source) {
    pt::ptree tree;
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(source, e.line(), 0, e.message());
    }
    const auto log = tree.get_child_optional("log");
    if (!log) throw ParseError(source, 0, 0, "missing <log> element");
    std::vector<Trace> traces;
    for (const auto& [tag, trace] : *log) {
        if (tag != "trace") continue;
        Trace t;
        for (const auto& [etag, event] : trace) {
            if (etag != "event") continue;
            const auto name = concept_name(event);
            const std::string where = "trace " + std::to_string(traces.size() + 1) + ", event " +
                                      std::to_string(t.size() + 1);
            if (!name) throw ParseError(source, 0, 0, where + ": event has no concept:name");
            if (!is_valid_activity(*name)) {
                throw ParseError(source, 0, 0, where + ": invalid activity name '" + *name + "'");
            }
            t.push_back(*name);
        }
        traces.push_back(std::move(t));
    }
    return EventLog(std::move(traces));
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

LogFormat log_format_for(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".xes") return LogFormat::Xes;
    if (ext == ".csv") return LogFormat::Csv;
    return LogFormat::Lines;
}

std::optional<LogFormat> log_format_from_name(std::string_view name) {
    if (name == "lines") return LogFormat::Lines;
    if (name == "csv") return LogFormat::Csv;
    if (name == "xes") return LogFormat::Xes;
    return std::nullopt;
}

EventLog parse_log(std::istream& in, LogFormat format, const std::string& source) {
    switch (format) {
        case LogFormat::Lines: return parse_lines_log(in, source);
        case LogFormat::Csv: return parse_csv_log(in, source);
        case LogFormat::Xes: return parse_xes_log(in, source);
    }
    throw InvalidArgument("unknown log format");
}

EventLog read_log(const fs::path& path, std::optional<LogFormat> format) {
    auto in = open_in(path);
    return parse_log(in, format.value_or(log_format_for(path)), path.string());
}

void write_log(std::ostream& out, const EventLog& log, LogFormat format) {
    switch (format) {
        case LogFormat::Lines:
            for (const auto& t : log) {
                for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
                out << '\n';
            }
            return;
        case LogFormat::Csv: {
            out << "case_id,activity\n";
            std::size_t id = 0;
            for (const auto& t : log) {
                ++id;
                for (const auto& a : t) out << "case" << id << ',' << a << '\n';
            }
            return;
        }
        case LogFormat::Xes: {
            out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                << "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n"
                << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
            std::size_t id = 0;
            for (const auto& t : log) {
                out << "  <trace>\n    <string key=\"concept:name\" value=\"case" << ++id << "\"/>\n";
                for (const auto& a : t) {
                    out << "    <event><string key=\"concept:name\" value=\"" << xml_escape(a) << "\"/></event>\n";
                }
                out << "  </trace>\n";
            }
            out << "</log>\n";
            return;
        }
    }
}

void write_log(const fs::path& path, const EventLog& log, std::optional<LogFormat> format) {
    auto out = open_out(path);
    write_log(out, log, format.value_or(log_format_for(path)));
}

// Declare ------------------------------------------------------------------

Constraint parse_constraint(std::string_view text, const std::string& source) {
    text = trim(text);
    if (text.empty()) throw ParseError(source, 0, 1, "empty constraint");
    {
        const std::size_t open = text.find('[');
        if (open == std::string_view::npos || text.back() != ']') {
            throw ParseError(source, 0, 1, "expected Template[args] in '" + std::string(text) + "'");
        }
        std::string_view head = trim(text.substr(0, open));
        std::size_t digits = head.size();
        while (digits > 0 && std::isdigit(static_cast<unsigned char>(head[digits - 1]))) --digits;
        const std::string_view name = head.substr(0, digits);
        const std::string_view count_text = head.substr(digits);
        const auto kind = kind_from_name(name);
        if (!kind) throw ParseError(source, 0, 1, "unknown template '" + std::string(head) + "'");
        unsigned count = 0;
        if (is_counting(*kind)) {
            count = 1;
            if (!count_text.empty()) {
                try {
                    count = static_cast<unsigned>(std::stoul(std::string(count_text)));
                } catch (const std::exception&) {
                    throw ParseError(source, 0, 1, "bad count in '" + std::string(head) + "'");
                }
            }
        } else if (!count_text.empty()) {
            throw ParseError(source, 0, 1, std::string(name) + " takes no count");
        }
        std::vector<Activity> args;
        std::size_t column = open + 2;
        for (auto field : split(text.substr(open + 1, text.size() - open - 2), ',')) {
            args.push_back(parse_activity(field, source, 0, column));
            column += field.size() + 1;
        }
        try {
            return Constraint(ConstraintTemplate{*kind, count}, std::move(args));
        } catch (const InvalidArgument& e) {
            throw ParseError(source, 0, 1, e.what());
        }
    }
}

std::vector<Constraint> parse_declare(std::istream& in, const std::string& source) {
    std::vector<Constraint> out;
    for (const auto& [n, line] : lines_of(in)) {
        const std::string_view text = content(line);
        if (text.empty()) continue;
        try {
            out.push_back(parse_constraint(text, source));
        } catch (const ParseError& e) {
            // Re-anchor at the line; the message already names the problem.
            const std::string msg = e.what();
            const std::size_t colon = msg.find(": ");
            throw ParseError(source, n, std::max<std::size_t>(e.column(), 1),
                             colon == std::string::npos ? msg : msg.substr(colon + 2));
        }
    }
    return out;
}

std::vector<Constraint> read_declare(const fs::path& path) {
    auto in = open_in(path);
    return parse_declare(in, path.string());
}

std::string format_declare(const std::vector<Constraint>& constraints) {
    std::vector<std::string> lines;
    for (const auto& c : constraints) lines.push_back(c.to_string());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

void write_declare(const fs::path& path, const std::vector<Constraint>& constraints) {
    auto out = open_out(path);
    out << format_declare(constraints);
}

// Native net format ---------------------------------------------------------

namespace {

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::string marking_text(const PetriNet& net, const Marking& m) {
    std::string out;
    for (std::size_t p = 0; p < m.size(); ++p) {
        for (std::uint32_t k = 0; k < m[p]; ++k) out += (out.empty() ? "" : " ") + net.places()[p];
    }
    return out.empty() ? "-" : out;
}

}  // namespace

PetriNet parse_net(std::istream& in, const std::string& source) {
    enum class Section { None, Places, Transitions, Arcs, Initial, Final };
    Section section = Section::None;
    PetriNet net;
    std::vector<std::pair<std::size_t, std::string>> initial, finals;
    struct PendingArc {
        std::size_t line;
        std::string from, to;
    };
    std::vector<PendingArc> arcs;
    bool saw_final = false;

    for (const auto& [n, raw] : lines_of(in)) {
        const std::string_view line = content(raw);
        if (line.empty()) continue;
        if (line.back() == ':' && line.find(' ') == std::string_view::npos) {
            const std::string_view name = line.substr(0, line.size() - 1);
            if (name == "places") section = Section::Places;
            else if (name == "transitions") section = Section::Transitions;
            else if (name == "arcs") section = Section::Arcs;
            else if (name == "initial") section = Section::Initial;
            else if (name == "final") {
                section = Section::Final;
                saw_final = true;
            } else {
                throw ParseError(source, n, 1, "unknown section '" + std::string(name) + "'");
            }
            continue;
        }
        const auto w = words(line);
        try {
            switch (section) {
                case Section::None: throw ParseError(source, n, 1, "content outside a section");
                case Section::Places:
                    if (w.size() != 1) throw ParseError(source, n, 1, "expected one place id");
                    net.add_place(std::string(w[0]));
                    break;
                case Section::Transitions:
                    if (w.size() != 2) throw ParseError(source, n, 1, "expected 'id label=NAME' or 'id silent'");
                    if (w[1] == "silent") {
                        net.add_transition(std::string(w[0]), std::nullopt);
                    } else if (w[1].starts_with("label=")) {
                        net.add_transition(std::string(w[0]), Activity(w[1].substr(6)));
                    } else {
                        throw ParseError(source, n, w[0].size() + 2, "expected label=NAME or silent");
                    }
                    break;
                case Section::Arcs:
                    if (w.size() != 3 || w[1] != "->") throw ParseError(source, n, 1, "expected 'from -> to'");
                    arcs.push_back({n, std::string(w[0]), std::string(w[2])});
                    break;
                case Section::Initial: initial.emplace_back(n, std::string(line)); break;
                case Section::Final: finals.emplace_back(n, std::string(line)); break;
            }
        } catch (const InvalidArgument& e) {
            throw ParseError(source, n, 1, e.what());
        }
    }

    for (const auto& a : arcs) {
        const auto p_from = net.find_place(a.from);
        const auto t_from = net.find_transition(a.from);
        const auto p_to = net.find_place(a.to);
        const auto t_to = net.find_transition(a.to);
        try {
            if (p_from && t_to) {
                net.add_input_arc(*p_from, *t_to);
            } else if (t_from && p_to) {
                net.add_output_arc(*t_from, *p_to);
            } else {
                throw ParseError(source, a.line, 1,
                                 "arc '" + a.from + " -> " + a.to + "' must join a declared place and transition");
            }
        } catch (const InvalidArgument& e) {
            throw ParseError(source, a.line, 1, e.what());
        }
    }

    auto parse_marking = [&](std::size_t n, const std::string& text) {
        Marking m(net.num_places(), 0);
        if (trim(text) == "-") return m;
        for (auto w : words(text)) {
            const auto p = net.find_place(w);
            if (!p) throw ParseError(source, n, 1, "unknown place '" + std::string(w) + "'");
            ++m[*p];
        }
        return m;
    };
    if (initial.size() > 1) throw ParseError(source, initial[1].first, 1, "only one initial marking allowed");
    net.set_initial(initial.empty() ? Marking(net.num_places(), 0) : parse_marking(initial[0].first, initial[0].second));
    for (const auto& [n, text] : finals) net.add_final(parse_marking(n, text));
    if (!saw_final || net.finals().empty()) throw ParseError(source, 0, 0, "net has no final marking");
    try {
        net.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    return net;
}

std::string format_net(const PetriNet& net) {
    std::ostringstream os;
    os << "places:\n";
    for (const auto& p : net.places()) os << "  " << p << '\n';
    os << "transitions:\n";
    for (const auto& t : net.transitions()) {
        os << "  " << t.id << (t.silent() ? " silent" : " label=" + *t.label) << '\n';
    }
    os << "arcs:\n";
    for (const auto& t : net.transitions()) {
        for (PlaceId p : t.inputs) os << "  " << net.places()[p] << " -> " << t.id << '\n';
        for (PlaceId p : t.outputs) os << "  " << t.id << " -> " << net.places()[p] << '\n';
    }
    os << "initial:\n  " << marking_text(net, net.initial()) << '\n';
    os << "final:\n";
    for (const auto& f : net.finals()) os << "  " << marking_text(net, f) << '\n';
    return os.str();
}

// PNML -----------------------------------------------------------------------

namespace {

constexpr std::string_view kToolName = "procframe";

void collect_pnml_nodes(const pt::ptree& node, std::vector<const pt::ptree*>& places,
                        std::vector<const pt::ptree*>& transitions, std::vector<const pt::ptree*>& arcs) {
    for (const auto& [tag, child] : node) {
        if (tag == "place") places.push_back(&child);
        else if (tag == "transition") transitions.push_back(&child);
        else if (tag == "arc") arcs.push_back(&child);
        else if (tag == "page") collect_pnml_nodes(child, places, transitions, arcs);
    }
}

std::uint32_t token_count(const pt::ptree& node, const std::string& source) {
    const std::string text(trim(node.get<std::string>("text", "0")));
    try {
        return static_cast<std::uint32_t>(std::stoul(text));
    } catch (const std::exception&) {
        throw ParseError(source, 0, 0, "bad token count '" + text + "'");
    }
}

}  // namespace

PetriNet parse_pnml(std::istream& in, const std::string& source) {
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(source, e.line(), 0, e.message());
    }
    const auto net_node = tree.get_child_optional("pnml.net");
    if (!net_node) throw ParseError(source, 0, 0, "missing <pnml><net> element");

    std::vector<const pt::ptree*> places, transitions, arcs;
    collect_pnml_nodes(*net_node, places, transitions, arcs);

    PetriNet net;
    std::vector<std::uint32_t> initial;
    try {
        for (const auto* p : places) {
            net.add_place(p->get<std::string>("<xmlattr>.id", ""));
            const auto im = p->get_child_optional("initialMarking");
            initial.push_back(im ? token_count(*im, source) : 0);
        }
        for (const auto* t : transitions) {
            const std::string id = t->get<std::string>("<xmlattr>.id", "");
            bool silent = false;
            for (const auto& [tag, child] : *t) {
                if (tag == "toolspecific" && child.get<std::string>("<xmlattr>.activity", "") == "$invisible$") {
                    silent = true;
                }
            }
            if (silent) {
                net.add_transition(id, std::nullopt);
            } else {
                const std::string label(trim(t->get<std::string>("name.text", id)));
                net.add_transition(id, label);
            }
        }
        for (const auto* a : arcs) {
            const std::string src = a->get<std::string>("<xmlattr>.source", "");
            const std::string dst = a->get<std::string>("<xmlattr>.target", "");
            const auto ps = net.find_place(src);
            const auto ts = net.find_transition(src);
            const auto pd = net.find_place(dst);
            const auto td = net.find_transition(dst);
            if (ps && td) net.add_input_arc(*ps, *td);
            else if (ts && pd) net.add_output_arc(*ts, *pd);
            else throw ParseError(source, 0, 0, "arc '" + src + "' -> '" + dst + "' references unknown nodes");
        }
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    net.set_initial(initial);

    auto read_markings = [&](const pt::ptree& container) {
        for (const auto& [tag, marking] : container) {
            if (tag != "marking") continue;
            Marking m(net.num_places(), 0);
            for (const auto& [ptag, place] : marking) {
                if (ptag != "place") continue;
                const std::string ref = place.get<std::string>("<xmlattr>.idref", "");
                const auto p = net.find_place(ref);
                if (!p) throw ParseError(source, 0, 0, "final marking references unknown place '" + ref + "'");
                m[*p] += token_count(place, source);
            }
            net.add_final(std::move(m));
        }
    };
    for (const auto& [tag, child] : *net_node) {
        if (tag == "finalmarkings") read_markings(child);
        if (tag == "toolspecific" && child.get<std::string>("<xmlattr>.tool", "") == kToolName) {
            if (const auto fm = child.get_child_optional("finalMarkings")) read_markings(*fm);
        }
    }
    try {
        net.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    return net;
}

std::string format_pnml(const PetriNet& net) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<pnml>\n"
       << "  <net id=\"net\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n"
       << "    <page id=\"page\">\n";
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        const std::string id = xml_escape(net.places()[p]);
        os << "      <place id=\"" << id << "\"><name><text>" << id << "</text></name>";
        if (net.initial()[p] > 0) os << "<initialMarking><text>" << net.initial()[p] << "</text></initialMarking>";
        os << "</place>\n";
    }
    for (const auto& t : net.transitions()) {
        os << "      <transition id=\"" << xml_escape(t.id) << "\"><name><text>"
           << xml_escape(t.silent() ? t.id : *t.label) << "</text></name>";
        if (t.silent()) os << "<toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\"/>";
        os << "</transition>\n";
    }
    std::size_t arc = 0;
    for (const auto& t : net.transitions()) {
        for (PlaceId p : t.inputs) {
            os << "      <arc id=\"a" << ++arc << "\" source=\"" << xml_escape(net.places()[p]) << "\" target=\""
               << xml_escape(t.id) << "\"/>\n";
        }
        for (PlaceId p : t.outputs) {
            os << "      <arc id=\"a" << ++arc << "\" source=\"" << xml_escape(t.id) << "\" target=\""
               << xml_escape(net.places()[p]) << "\"/>\n";
        }
    }
    os << "    </page>\n    <toolspecific tool=\"" << kToolName << "\" version=\"1\">\n      <finalMarkings>\n";
    for (const auto& f : net.finals()) {
        os << "        <marking>";
        for (std::size_t p = 0; p < f.size(); ++p) {
            if (f[p] > 0) {
                os << "<place idref=\"" << xml_escape(net.places()[p]) << "\"><text>" << f[p] << "</text></place>";
            }
        }
        os << "</marking>\n";
    }
    os << "      </finalMarkings>\n    </toolspecific>\n  </net>\n</pnml>\n";
    return os.str();
}

PetriNet read_net(const fs::path& path) {
    auto in = open_in(path);
    if (path.extension() == ".pnml") return parse_pnml(in, path.string());
    return parse_net(in, path.string());
}

void write_net(const fs::path& path, const PetriNet& net) {
    auto out = open_out(path);
    out << (path.extension() == ".pnml" ? format_pnml(net) : format_net(net));
}

// DFA text -------------------------------------------------------------------

Dfa parse_dfa(std::istream& in, const std::string& source) {
    std::optional<std::vector<Activity>> symbols;
    std::optional<std::size_t> states;
    std::optional<StateId> initial;
    std::optional<std::vector<bool>> accepting;
    std::vector<StateId> table;
    std::vector<bool> row_seen;

    auto number = [&](std::string_view text, std::size_t line) -> std::size_t {
        const std::string s(trim(text));
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw ParseError(source, line, 1, "expected a number, got '" + s + "'");
        }
        return std::stoul(s);
    };

    for (const auto& [n, raw] : lines_of(in)) {
        const std::string_view line = content(raw);
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(source, n, 1, "expected 'key: value'");
        const std::string_view key = trim(line.substr(0, colon));
        const std::string_view value = trim(line.substr(colon + 1));
        if (key == "symbols") {
            std::vector<Activity> syms;
            if (!value.empty()) {
                for (auto f : split(value, ',')) syms.push_back(parse_activity(f, source, n, 1));
            }
            symbols = std::move(syms);
        } else if (key == "states") {
            states = number(value, n);
        } else if (key == "initial") {
            initial = static_cast<StateId>(number(value, n));
        } else if (key == "accepting") {
            if (!states) throw ParseError(source, n, 1, "'states:' must come before 'accepting:'");
            std::vector<bool> acc(*states, false);
            if (!value.empty()) {
                for (auto f : split(value, ',')) {
                    const std::size_t s = number(f, n);
                    if (s >= *states) throw ParseError(source, n, 1, "accepting state out of range");
                    acc[s] = true;
                }
            }
            accepting = std::move(acc);
        } else {
            if (!symbols || !states) throw ParseError(source, n, 1, "rows need 'symbols:' and 'states:' first");
            const std::size_t s = number(key, n);
            if (s >= *states) throw ParseError(source, n, 1, "state out of range");
            const std::size_t cols = symbols->size() + 1;
            if (table.empty()) {
                table.assign(*states * cols, 0);
                row_seen.assign(*states, false);
            }
            if (row_seen[s]) throw ParseError(source, n, 1, "duplicate row for state " + std::to_string(s));
            row_seen[s] = true;
            const std::size_t bar = value.find('|');
            if (bar == std::string_view::npos) throw ParseError(source, n, 1, "expected '| default'");
            const std::string_view succ = trim(value.substr(0, bar));
            std::vector<std::string_view> fields;
            if (!succ.empty()) fields = split(succ, ',');
            if (fields.size() != symbols->size()) throw ParseError(source, n, 1, "wrong number of successors");
            for (std::size_t c = 0; c < fields.size(); ++c) {
                table[s * cols + c] = static_cast<StateId>(number(fields[c], n));
            }
            table[s * cols + symbols->size()] = static_cast<StateId>(number(value.substr(bar + 1), n));
        }
    }
    if (!symbols || !states || !initial || !accepting) {
        throw ParseError(source, 0, 0, "missing one of symbols, states, initial, accepting");
    }
    if (std::count(row_seen.begin(), row_seen.end(), true) != static_cast<std::ptrdiff_t>(*states)) {
        throw ParseError(source, 0, 0, "every state needs a row");
    }
    try {
        return Dfa(std::move(*symbols), *states, *initial, std::move(*accepting), std::move(table));
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
}

std::string format_dfa(const Dfa& dfa) {
    std::ostringstream os;
    os << "symbols:";
    for (std::size_t i = 0; i < dfa.symbols().size(); ++i) os << (i ? "," : " ") << dfa.symbols()[i];
    os << "\nstates: " << dfa.num_states() << "\ninitial: " << dfa.initial() << "\naccepting:";
    bool first = true;
    for (StateId s = 0; s < dfa.num_states(); ++s) {
        if (!dfa.is_accepting(s)) continue;
        os << (first ? " " : ",") << s;
        first = false;
    }
    os << '\n';
    for (StateId s = 0; s < dfa.num_states(); ++s) {
        os << s << ':';
        for (std::size_t c = 0; c < dfa.symbols().size(); ++c) os << (c ? "," : " ") << dfa.next(s, c);
        os << " | " << dfa.default_successor(s) << '\n';
    }
    return os.str();
}

Dfa read_dfa(const fs::path& path) {
    auto in = open_in(path);
    return parse_dfa(in, path.string());
}

void write_dfa(const fs::path& path, const Dfa& dfa) {
    auto out = open_out(path);
    out << format_dfa(dfa);
}

// Manifests -------------------------------------------------------------------

namespace {

std::string_view kind_text(SpecKind kind) {
    switch (kind) {
        case SpecKind::Declare: return "declare";
        case SpecKind::Net: return "net";
        case SpecKind::Dfa: return "dfa";
    }
    return "";
}

}  // namespace

FrameManifest parse_manifest(std::istream& in, const std::string& source) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, e.byte, e.what());
    }
    FrameManifest m;
    try {
        for (const auto& entry : doc.at("specs")) {
            ManifestEntry e;
            e.name = entry.at("name").get<std::string>();
            const std::string kind = entry.at("kind").get<std::string>();
            if (kind == "declare") e.kind = SpecKind::Declare;
            else if (kind == "net") e.kind = SpecKind::Net;
            else if (kind == "dfa") e.kind = SpecKind::Dfa;
            else throw ParseError(source, 0, 0, "unknown specification kind '" + kind + "'");
            e.path = entry.at("path").get<std::string>();
            if (entry.contains("alphabet")) {
                ActivitySet alphabet;
                for (const auto& a : entry.at("alphabet")) {
                    const auto name = a.get<std::string>();
                    if (!is_valid_activity(name)) throw ParseError(source, 0, 0, "invalid activity '" + name + "'");
                    alphabet.insert(name);
                }
                e.alphabet = std::move(alphabet);
            }
            for (const auto& prev : m.entries) {
                if (prev.name == e.name) throw ParseError(source, 0, 0, "duplicate specification '" + e.name + "'");
            }
            m.entries.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    return m;
}

std::string format_manifest(const FrameManifest& manifest) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["specs"] = ordered_json::array();
    for (const auto& e : manifest.entries) {
        ordered_json j;
        j["name"] = e.name;
        j["kind"] = kind_text(e.kind);
        j["path"] = e.path.generic_string();
        if (e.alphabet) j["alphabet"] = std::vector<std::string>(e.alphabet->begin(), e.alphabet->end());
        doc["specs"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

ProcessFrame load_frame(const fs::path& manifest_path) {
    auto in = open_in(manifest_path);
    const FrameManifest manifest = parse_manifest(in, manifest_path.string());
    const fs::path dir = manifest_path.parent_path();
    ProcessFrame frame;
    for (const auto& e : manifest.entries) {
        const fs::path path = e.path.is_absolute() ? e.path : dir / e.path;
        if (!fs::exists(path)) throw ParseError(manifest_path.string(), 0, 0, "missing file " + path.string());
        switch (e.kind) {
            case SpecKind::Declare: frame.add(Specification::declare(e.name, read_declare(path), e.alphabet)); break;
            case SpecKind::Net: frame.add(Specification::net(e.name, read_net(path), e.alphabet)); break;
            case SpecKind::Dfa: frame.add(Specification::raw(e.name, read_dfa(path), e.alphabet)); break;
        }
    }
    return frame;
}

void save_frame(const fs::path& manifest_path, const ProcessFrame& frame) {
    const fs::path dir = manifest_path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    FrameManifest manifest;
    for (const auto& s : frame.specs()) {
        ManifestEntry e;
        e.name = s.name();
        e.alphabet = s.alphabet();
        std::string file = s.name();
        std::replace_if(file.begin(), file.end(), [](unsigned char c) { return !std::isalnum(c) && c != '-' && c != '_'; }, '_');
        if (s.is_declare()) {
            e.kind = SpecKind::Declare;
            e.path = file + ".decl";
            write_declare(dir / e.path, s.constraints());
        } else if (s.is_net()) {
            e.kind = SpecKind::Net;
            e.path = file + ".net";
            write_net(dir / e.path, s.petri_net());
        } else {
            e.kind = SpecKind::Dfa;
            e.path = file + ".dfa";
            write_dfa(dir / e.path, s.dfa());
        }
        manifest.entries.push_back(std::move(e));
    }
    auto out = open_out(manifest_path);
    out << format_manifest(manifest);
}

// DOT -------------------------------------------------------------------------

std::string frame_to_dot(const ProcessFrame& frame, bool hide_trap) {
    std::ostringstream os;
    os << "digraph \"frame\" {\n  rankdir=LR;\n  compound=true;\n";
    std::size_t i = 0;
    for (const auto& s : frame.specs()) {
        const std::string prefix = "c" + std::to_string(i) + ".";
        os << "  subgraph \"cluster_" << i << "\" {\n    label=\"" << xml_escape(s.name()) << "\";\n";
        if (s.is_declare()) {
            std::string label;
            for (const auto& c : s.constraints()) label += c.to_string() + "\\l";
            os << "    \"" << prefix << "constraints\" [shape=note,label=\"" << (label.empty() ? "(none)" : label)
               << "\"];\n";
        } else {
            // Reuse the standalone renderings with node ids prefixed per cluster.
            const std::string body = s.is_net() ? net_to_dot(s.petri_net(), s.name()) : to_dot(s.dfa(), hide_trap, s.name());
            std::istringstream lines(body);
            std::string line;
            const std::regex dfa_node(R"((^\s*|-> )s(\d+))");
            while (std::getline(lines, line)) {
                if (line.starts_with("digraph") || line == "}" || line.find("rankdir") != std::string::npos) continue;
                if (s.is_net()) {
                    line = std::regex_replace(line, std::regex(R"("([pt]):)"), "\"" + prefix + "$1:");
                } else {
                    line = std::regex_replace(line, dfa_node, "$1\"" + prefix + "s$2\"");
                }
                os << "  " << line << '\n';
            }
        }
        os << "  }\n";
        ++i;
    }
    os << "}\n";
    return os.str();
}

}  // namespace procframe
