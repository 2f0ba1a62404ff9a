#include "procframe/petri.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "procframe/error.hpp"

namespace procframe {

PlaceId PetriNet::add_place(std::string id) {
    if (id.empty()) throw InvalidArgument("place id must not be empty");
    if (find_place(id)) throw InvalidArgument("duplicate place id '" + id + "'");
    places_.push_back(std::move(id));
    initial_.push_back(0);
    for (auto& f : finals_) f.push_back(0);
    return static_cast<PlaceId>(places_.size() - 1);
}

TransitionId PetriNet::add_transition(std::string id, std::optional<Activity> label) {
    if (id.empty()) throw InvalidArgument("transition id must not be empty");
    if (find_transition(id)) throw InvalidArgument("duplicate transition id '" + id + "'");
    if (label) require_valid_activity(*label);
    transitions_.push_back(Transition{std::move(id), std::move(label), {}, {}});
    return static_cast<TransitionId>(transitions_.size() - 1);
}

TransitionId PetriNet::add_transition(std::string id, std::optional<Activity> label,
                                      std::vector<PlaceId> inputs, std::vector<PlaceId> outputs) {
    const TransitionId t = add_transition(std::move(id), std::move(label));
    for (PlaceId p : inputs) add_input_arc(p, t);
    for (PlaceId p : outputs) add_output_arc(t, p);
    return t;
}

void PetriNet::add_input_arc(PlaceId place, TransitionId transition) {
    if (place >= places_.size() || transition >= transitions_.size()) {
        throw InvalidArgument("arc references an unknown node");
    }
    auto& in = transitions_[transition].inputs;
    if (std::find(in.begin(), in.end(), place) != in.end()) {
        throw InvalidArgument("duplicate arc " + places_[place] + " -> " + transitions_[transition].id);
    }
    in.push_back(place);
}

void PetriNet::add_output_arc(TransitionId transition, PlaceId place) {
    if (place >= places_.size() || transition >= transitions_.size()) {
        throw InvalidArgument("arc references an unknown node");
    }
    auto& out = transitions_[transition].outputs;
    if (std::find(out.begin(), out.end(), place) != out.end()) {
        throw InvalidArgument("duplicate arc " + transitions_[transition].id + " -> " + places_[place]);
    }
    out.push_back(place);
}

void PetriNet::set_initial(Marking m) {
    if (m.size() != places_.size()) throw InvalidArgument("initial marking has wrong size");
    initial_ = std::move(m);
}

void PetriNet::add_final(Marking m) {
    if (m.size() != places_.size()) throw InvalidArgument("final marking has wrong size");
    if (std::find(finals_.begin(), finals_.end(), m) == finals_.end()) finals_.push_back(std::move(m));
}

Marking PetriNet::marking_of(const std::vector<PlaceId>& places) const {
    Marking m(places_.size(), 0);
    for (PlaceId p : places) m.at(p) += 1;
    return m;
}

std::optional<PlaceId> PetriNet::find_place(std::string_view id) const {
    for (std::size_t i = 0; i < places_.size(); ++i) {
        if (places_[i] == id) return static_cast<PlaceId>(i);
    }
    return std::nullopt;
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view id) const {
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].id == id) return static_cast<TransitionId>(i);
    }
    return std::nullopt;
}

ActivitySet PetriNet::labels() const {
    ActivitySet out;
    for (const auto& t : transitions_) {
        if (t.label) out.insert(*t.label);
    }
    return out;
}

void PetriNet::validate() const {
    for (const auto& t : transitions_) {
        if (t.inputs.empty()) throw InvalidArgument("transition '" + t.id + "' has no input place");
        if (t.outputs.empty()) throw InvalidArgument("transition '" + t.id + "' has no output place");
    }
    if (initial_.size() != places_.size()) throw InvalidArgument("initial marking has wrong size");
    if (finals_.empty()) throw InvalidArgument("net has no final marking");
    for (const auto& f : finals_) {
        if (f.size() != places_.size()) throw InvalidArgument("final marking has wrong size");
    }
}

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m) {
    std::vector<TransitionId> out;
    const auto& ts = net.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const bool ok = std::all_of(ts[i].inputs.begin(), ts[i].inputs.end(),
                                    [&](PlaceId p) { return p < m.size() && m[p] > 0; });
        if (ok) out.push_back(static_cast<TransitionId>(i));
    }
    return out;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
    const Transition& tr = net.transition(t);
    Marking out = m;
    for (PlaceId p : tr.inputs) {
        if (p >= out.size() || out[p] == 0) throw NotEnabled("transition '" + tr.id + "' is not enabled");
        --out[p];
    }
    for (PlaceId p : tr.outputs) ++out.at(p);
    return out;
}

ReachabilityGraph reachability(const PetriNet& net, std::size_t state_cap) {
    net.validate();
    ReachabilityGraph g;
    std::map<Marking, std::size_t> index;
    std::deque<std::size_t> queue;
    auto intern = [&](const Marking& m) {
        auto [it, inserted] = index.emplace(m, g.markings.size());
        if (inserted) {
            if (g.markings.size() >= state_cap) {
                throw UnboundedNet("net exceeds " + std::to_string(state_cap) + " reachable markings");
            }
            g.markings.push_back(m);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(net.initial());
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const Marking m = g.markings[cur];
        for (TransitionId t : enabled(net, m)) {
            const std::size_t to = intern(fire(net, m, t));
            g.edges.push_back({cur, t, to});
        }
    }
    return g;
}

bool is_one_safe(const PetriNet& net, std::size_t state_cap) {
    const auto g = reachability(net, state_cap);
    for (const auto& m : g.markings) {
        if (std::any_of(m.begin(), m.end(), [](std::uint32_t n) { return n > 1; })) return false;
    }
    return true;
}

Dfa net_to_dfa(const PetriNet& net, std::size_t state_cap) {
    const auto g = reachability(net, state_cap);
    const ActivitySet label_set = net.labels();
    const std::vector<Activity> symbols(label_set.begin(), label_set.end());
    const std::size_t k = symbols.size();
    const std::size_t n = g.markings.size();

    std::vector<std::vector<std::size_t>> silent(n);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> visible(n);  // (symbol, target)
    for (const auto& e : g.edges) {
        const auto& t = net.transition(e.transition);
        if (t.silent()) {
            silent[e.from].push_back(e.to);
        } else {
            const auto col = static_cast<std::size_t>(
                std::lower_bound(symbols.begin(), symbols.end(), *t.label) - symbols.begin());
            visible[e.from].emplace_back(col, e.to);
        }
    }
    std::vector<bool> is_final(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        is_final[i] = std::find(net.finals().begin(), net.finals().end(), g.markings[i]) != net.finals().end();
    }

    using Subset = std::vector<std::size_t>;
    auto closure = [&](Subset s) {
        std::set<std::size_t> seen(s.begin(), s.end());
        std::vector<std::size_t> stack(s.begin(), s.end());
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : silent[x]) {
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
        return Subset(seen.begin(), seen.end());
    };

    // Subset 0 is the empty set and serves as the trap.
    std::map<Subset, StateId> index;
    std::vector<Subset> subsets;
    std::vector<StateId> table;
    std::vector<bool> accepting;
    auto intern = [&](Subset s) {
        auto [it, inserted] = index.emplace(s, static_cast<StateId>(subsets.size()));
        if (inserted) {
            if (subsets.size() >= state_cap) {
                throw StateBudgetExceeded("determinization exceeds " + std::to_string(state_cap) + " states");
            }
            subsets.push_back(std::move(s));
        }
        return it->second;
    };
    intern({});
    const StateId init = intern(closure({0}));
    for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
        const Subset s = subsets[cur];
        accepting.push_back(std::any_of(s.begin(), s.end(), [&](std::size_t x) { return is_final[x]; }));
        std::vector<Subset> succ(k);
        for (std::size_t x : s) {
            for (const auto& [col, to] : visible[x]) succ[col].push_back(to);
        }
        for (std::size_t c = 0; c < k; ++c) table.push_back(intern(closure(std::move(succ[c]))));
        table.push_back(0);
    }
    return minimize(Dfa(symbols, subsets.size(), init, std::move(accepting), std::move(table)));
}

bool net_accepts(const PetriNet& net, const Trace& trace, std::size_t state_cap) {
    net.validate();
    auto closure = [&](std::set<Marking> s) {
        std::vector<Marking> stack(s.begin(), s.end());
        while (!stack.empty()) {
            const Marking m = std::move(stack.back());
            stack.pop_back();
            for (TransitionId t : enabled(net, m)) {
                if (!net.transition(t).silent()) continue;
                Marking next = fire(net, m, t);
                if (s.insert(next).second) {
                    if (s.size() > state_cap) {
                        throw UnboundedNet("net exceeds " + std::to_string(state_cap) + " reachable markings");
                    }
                    stack.push_back(std::move(next));
                }
            }
        }
        return s;
    };
    std::set<Marking> current = closure({net.initial()});
    for (const auto& a : trace) {
        std::set<Marking> next;
        for (const auto& m : current) {
            for (TransitionId t : enabled(net, m)) {
                const auto& tr = net.transition(t);
                if (tr.label && *tr.label == a) next.insert(fire(net, m, t));
            }
        }
        if (next.empty()) return false;
        current = closure(std::move(next));
    }
    return std::any_of(net.finals().begin(), net.finals().end(),
                       [&](const Marking& f) { return current.contains(f); });
}

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string net_to_dot(const PetriNet& net, std::string_view name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        const bool is_final = std::any_of(net.finals().begin(), net.finals().end(),
                                          [&](const Marking& f) { return f[p] > 0; });
        os << "  " << quote("p:" + net.places()[p]) << " [shape=circle,label="
           << quote(net.initial()[p] > 0 ? "&bull;" : "") << ",xlabel=" << quote(net.places()[p]);
        if (is_final) os << ",peripheries=2";
        os << "];\n";
    }
    for (const auto& t : net.transitions()) {
        os << "  " << quote("t:" + t.id) << " [shape=box";
        if (t.silent()) {
            os << ",style=filled,fillcolor=black,label=\"\",width=0.15";
        } else {
            os << ",label=" << quote(*t.label);
        }
        os << "];\n";
    }
    for (const auto& t : net.transitions()) {
        for (PlaceId p : t.inputs) os << "  " << quote("p:" + net.places()[p]) << " -> " << quote("t:" + t.id) << ";\n";
        for (PlaceId p : t.outputs) os << "  " << quote("t:" + t.id) << " -> " << quote("p:" + net.places()[p]) << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace procframe
