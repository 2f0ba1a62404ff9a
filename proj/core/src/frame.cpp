#include "procframe/frame.hpp"

#include <algorithm>

#include "procframe/error.hpp"

namespace procframe {

DeclareSet make_declare_set(std::vector<Constraint> constraints) {
    std::sort(constraints.begin(), constraints.end());
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
    return constraints;
}

ActivitySet referenced_activities(const DeclareSet& set) {
    ActivitySet out;
    for (const auto& c : set) out.insert(c.args().begin(), c.args().end());
    return out;
}

bool is_position_sensitive(const DeclareSet& set) {
    return std::any_of(set.begin(), set.end(), [](const Constraint& c) { return is_position_sensitive(c.kind()); });
}

namespace {

void require_subset(const ActivitySet& used, const ActivitySet& alphabet, const std::string& spec) {
    for (const auto& a : used) {
        if (!alphabet.contains(a)) {
            throw AlphabetMismatch("specification '" + spec + "' uses '" + a + "' outside its alphabet");
        }
    }
}

}  // namespace

Specification::Specification(std::string name, ActivitySet alphabet, Body body)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), body_(std::move(body)) {
    if (name_.empty()) throw InvalidArgument("specification name must not be empty");
    for (const auto& a : alphabet_) require_valid_activity(a);
}

Specification Specification::declare(std::string name, std::vector<Constraint> constraints,
                                     std::optional<ActivitySet> alphabet) {
    DeclareSet set = make_declare_set(std::move(constraints));
    const ActivitySet used = referenced_activities(set);
    if (alphabet) require_subset(used, *alphabet, name);
    return Specification(std::move(name), alphabet ? std::move(*alphabet) : used, std::move(set));
}

Specification Specification::net(std::string name, PetriNet net, std::optional<ActivitySet> alphabet) {
    net.validate();
    const ActivitySet used = net.labels();
    if (alphabet) require_subset(used, *alphabet, name);
    return Specification(std::move(name), alphabet ? std::move(*alphabet) : used, std::move(net));
}

Specification Specification::raw(std::string name, Dfa dfa, std::optional<ActivitySet> alphabet) {
    const ActivitySet used(dfa.symbols().begin(), dfa.symbols().end());
    if (alphabet) require_subset(used, *alphabet, name);
    return Specification(std::move(name), alphabet ? std::move(*alphabet) : used, std::move(dfa));
}

ActivitySet Specification::effective_alphabet(const ActivitySet& frame_alphabet) const {
    if (is_declare() && is_position_sensitive(constraints())) {
        ActivitySet out = alphabet_;
        out.insert(frame_alphabet.begin(), frame_alphabet.end());
        return out;
    }
    return alphabet_;
}

ProcessFrame::ProcessFrame(std::vector<Specification> specs) {
    for (auto& s : specs) add(std::move(s));
}

void ProcessFrame::add(Specification spec) {
    if (contains(spec.name())) throw InvalidArgument("duplicate specification name '" + spec.name() + "'");
    specs_.push_back(std::move(spec));
}

const Specification& ProcessFrame::spec(std::string_view name) const {
    for (const auto& s : specs_) {
        if (s.name() == name) return s;
    }
    throw UnknownSpec("no specification named '" + std::string(name) + "'");
}

bool ProcessFrame::contains(std::string_view name) const {
    return std::any_of(specs_.begin(), specs_.end(), [&](const Specification& s) { return s.name() == name; });
}

ActivitySet all_tasks(const ProcessFrame& frame) {
    ActivitySet out;
    for (const auto& s : frame.specs()) out.insert(s.alphabet().begin(), s.alphabet().end());
    return out;
}

ActivitySet common_tasks(const ProcessFrame& frame) {
    if (frame.empty()) return {};
    ActivitySet out = frame.specs().front().alphabet();
    for (const auto& s : frame.specs()) {
        ActivitySet keep;
        std::set_intersection(out.begin(), out.end(), s.alphabet().begin(), s.alphabet().end(),
                              std::inserter(keep, keep.end()));
        out = std::move(keep);
    }
    return out;
}

Dfa spec_dfa(const Specification& spec, std::size_t state_cap) {
    return spec_dfa(spec, spec.alphabet(), state_cap);
}

Dfa spec_dfa(const Specification& spec, const ActivitySet& frame_alphabet, std::size_t state_cap) {
    const ActivitySet local = spec.effective_alphabet(frame_alphabet);
    if (spec.is_declare()) {
        std::vector<Dfa> parts;
        for (const auto& c : spec.constraints()) parts.push_back(compile(c));
        if (parts.empty()) return minimize(embed(Dfa::universal(), local));
        return minimize(embed(intersect_all(parts, state_cap), local));
    }
    if (spec.is_net()) return minimize(embed(net_to_dfa(spec.petri_net(), state_cap), local));
    return minimize(embed(spec.dfa(), local));
}

std::optional<Violation> first_violation(const ProcessFrame& frame, const Trace& trace) {
    const ActivitySet tasks = all_tasks(frame);
    for (const auto& a : trace) {
        if (!tasks.contains(a)) throw UnknownActivity("activity '" + a + "' is not part of the frame");
    }
    for (const auto& s : frame.specs()) {
        const Trace local = project(trace, s.effective_alphabet(tasks));
        if (s.is_declare()) {
            for (const auto& c : s.constraints()) {
                if (!accepts(compile(c), local)) return Violation{s.name(), c};
            }
        } else if (s.is_net()) {
            if (!net_accepts(s.petri_net(), local)) return Violation{s.name(), std::nullopt};
        } else if (!accepts(s.dfa(), local)) {
            return Violation{s.name(), std::nullopt};
        }
    }
    return std::nullopt;
}

bool frame_accepts(const ProcessFrame& frame, const Trace& trace) { return !first_violation(frame, trace); }

Dfa global_dfa(const ProcessFrame& frame, std::size_t state_cap) {
    if (frame.empty()) return Dfa::universal();
    const ActivitySet tasks = all_tasks(frame);
    std::vector<Dfa> parts;
    for (const auto& s : frame.specs()) parts.push_back(spec_dfa(s, tasks, state_cap));
    return intersect_all(parts, state_cap);
}

ProcessFrame merge_specs(const ProcessFrame& frame, const std::vector<std::string>& names, std::size_t state_cap) {
    for (const auto& n : names) frame.spec(n);
    if (names.empty()) return frame;
    const ActivitySet tasks = all_tasks(frame);
    auto named = [&](const Specification& s) { return std::find(names.begin(), names.end(), s.name()) != names.end(); };

    std::vector<Dfa> parts;
    ActivitySet alphabet;
    std::string merged_name;
    for (const auto& s : frame.specs()) {
        if (!named(s)) continue;
        parts.push_back(spec_dfa(s, tasks, state_cap));
        const ActivitySet local = s.effective_alphabet(tasks);
        alphabet.insert(local.begin(), local.end());
        merged_name += merged_name.empty() ? s.name() : "+" + s.name();
    }
    Specification merged = Specification::raw(merged_name, intersect_all(parts, state_cap), alphabet);

    ProcessFrame out;
    bool placed = false;
    for (const auto& s : frame.specs()) {
        if (!named(s)) {
            out.add(s);
        } else if (!placed) {
            out.add(merged);
            placed = true;
        }
    }
    return out;
}

ProcessFrame split_spec(const ProcessFrame& frame, std::string_view name,
                        const std::vector<std::vector<Constraint>>& parts) {
    const Specification& target = frame.spec(name);
    if (!target.is_declare()) throw NotSplittable("specification '" + target.name() + "' is not declarative");

    std::vector<Constraint> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end() || all != target.constraints()) {
        throw InvalidArgument("parts do not partition the constraints of '" + target.name() + "'");
    }
    if (parts.size() <= 1) return frame;

    ProcessFrame out;
    for (const auto& s : frame.specs()) {
        if (s.name() != name) {
            out.add(s);
            continue;
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            out.add(Specification::declare(s.name() + "#" + std::to_string(i + 1), parts[i], s.alphabet()));
        }
    }
    return out;
}

}  // namespace procframe
