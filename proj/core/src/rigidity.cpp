#include "procframe/rigidity.hpp"

#include <algorithm>
#include <set>

#include "procframe/error.hpp"

namespace procframe {

std::string_view cardinality_name(Cardinality c) {
    switch (c) {
        case Cardinality::None: return "none";
        case Cardinality::OneOne: return "1..1";
        case Cardinality::OneMany: return "1..n";
        case Cardinality::ZeroOne: return "0..1";
        case Cardinality::ZeroMany: return "0..n";
    }
    return "none";
}

std::string_view rule_name(CardinalityRule r) {
    switch (r) {
        case CardinalityRule::None: return "none";
        case CardinalityRule::AlternateSuccession: return "AlternateSuccession";
        case CardinalityRule::SuccessionAlternateResponse: return "Succession+AlternateResponse";
        case CardinalityRule::SuccessionAlternatePrecedence: return "Succession+AlternatePrecedence";
        case CardinalityRule::AlternatePrecedence: return "AlternatePrecedence";
        case CardinalityRule::AlternateResponse: return "AlternateResponse";
        case CardinalityRule::Precedence: return "Precedence";
        case CardinalityRule::Response: return "Response";
    }
    return "none";
}

PairCardinality CardinalityProfile::at(const Activity& a, const Activity& b) const {
    const auto it = pairs_.find({a, b});
    return it == pairs_.end() ? PairCardinality{} : it->second;
}

CardinalityProfile cardinality_profile(const std::vector<Constraint>& constraints) {
    std::map<std::pair<Activity, Activity>, std::set<TemplateKind>> kinds;
    for (const auto& c : constraints) {
        if (arity(c.kind()) != 2 || c.arg(0) == c.arg(1)) continue;
        kinds[{c.arg(0), c.arg(1)}].insert(c.kind());
    }
    CardinalityProfile profile;
    for (const auto& [pair, ks] : kinds) {
        auto has = [&](TemplateKind k) { return ks.contains(k); };
        using K = TemplateKind;
        using R = CardinalityRule;
        PairCardinality pc;
        if (has(K::AlternateSuccession)) {
            pc.outgoing = Cardinality::OneOne;
            pc.outgoing_rule = R::AlternateSuccession;
        } else if (has(K::Succession) && has(K::AlternateResponse)) {
            pc.outgoing = Cardinality::OneMany;
            pc.outgoing_rule = R::SuccessionAlternateResponse;
        } else if (has(K::AlternatePrecedence)) {
            pc.outgoing = Cardinality::ZeroOne;
            pc.outgoing_rule = R::AlternatePrecedence;
        } else if (has(K::AlternateResponse)) {
            pc.outgoing = Cardinality::OneMany;
            pc.outgoing_rule = R::AlternateResponse;
        } else if (has(K::Precedence)) {
            pc.outgoing = Cardinality::ZeroMany;
            pc.outgoing_rule = R::Precedence;
        }
        if (has(K::AlternateSuccession)) {
            pc.incoming = Cardinality::OneOne;
            pc.incoming_rule = R::AlternateSuccession;
        } else if (has(K::Succession) && has(K::AlternatePrecedence)) {
            pc.incoming = Cardinality::OneMany;
            pc.incoming_rule = R::SuccessionAlternatePrecedence;
        } else if (has(K::AlternatePrecedence)) {
            pc.incoming = Cardinality::OneMany;
            pc.incoming_rule = R::AlternatePrecedence;
        } else if (has(K::AlternateResponse)) {
            pc.incoming = Cardinality::ZeroOne;
            pc.incoming_rule = R::AlternateResponse;
        } else if (has(K::Response)) {
            pc.incoming = Cardinality::ZeroMany;
            pc.incoming_rule = R::Response;
        }
        if (pc != PairCardinality{}) profile.set(pair.first, pair.second, pc);
    }
    return profile;
}

CardinalityProfile cardinality_profile(const MinedModel& model) { return cardinality_profile(model.constraints); }

std::string_view construct_name(Construct c) {
    switch (c) {
        case Construct::Sequence: return "Sequence";
        case Construct::Parallel: return "Parallel";
        case Construct::Xor: return "Xor";
        case Construct::Or: return "Or";
    }
    return "";
}

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::Mandatory: return "Mandatory";
        case Variant::Optional: return "Optional";
        case Variant::MandatoryRepeatable: return "MandatoryRepeatable";
        case Variant::OptionalRepeatable: return "OptionalRepeatable";
    }
    return "";
}

bool is_optional(Variant v) { return v == Variant::Optional || v == Variant::OptionalRepeatable; }
bool is_repeatable(Variant v) { return v == Variant::MandatoryRepeatable || v == Variant::OptionalRepeatable; }

Variant make_variant(bool optional, bool repeatable) {
    if (optional) return repeatable ? Variant::OptionalRepeatable : Variant::Optional;
    return repeatable ? Variant::MandatoryRepeatable : Variant::Mandatory;
}

ActivitySet DetectedFragment::activities() const {
    ActivitySet out(predecessors.begin(), predecessors.end());
    out.insert(followers.begin(), followers.end());
    for (const auto& b : branches) out.insert(b.begin(), b.end());
    return out;
}

PetriNet synthesize_net(const DetectedFragment& f) {
    if (f.branches.empty() || std::any_of(f.branches.begin(), f.branches.end(), [](const auto& b) { return b.empty(); })) {
        throw InvalidArgument("fragment needs at least one non-empty branch");
    }
    PetriNet net;
    std::size_t places = 0;
    std::size_t silents = 0;
    auto place = [&] { return net.add_place("p" + std::to_string(places++)); };
    auto tau = [&](std::vector<PlaceId> in, std::vector<PlaceId> out) {
        net.add_transition("tau" + std::to_string(++silents), std::nullopt, std::move(in), std::move(out));
    };
    // Chain of labeled transitions from `from`; returns the place after the last one.
    auto chain = [&](PlaceId from, const std::vector<Activity>& acts, std::optional<PlaceId> last = std::nullopt) {
        PlaceId cur = from;
        for (std::size_t i = 0; i < acts.size(); ++i) {
            const PlaceId next = (i + 1 == acts.size() && last) ? *last : place();
            net.add_transition("t_" + acts[i], acts[i], {cur}, {next});
            cur = next;
        }
        return cur;
    };

    const PlaceId source = place();
    const PlaceId x = f.predecessors.empty() ? source : chain(source, f.predecessors);
    // A region that is both entered and left at the source gets its own exit place.
    const PlaceId y = place();

    switch (f.construct) {
        case Construct::Sequence: {
            std::vector<Activity> all;
            for (const auto& b : f.branches) all.insert(all.end(), b.begin(), b.end());
            chain(x, all, y);
            break;
        }
        case Construct::Xor:
            for (const auto& b : f.branches) chain(x, b, y);
            break;
        case Construct::Parallel: {
            std::vector<PlaceId> starts, ends;
            for (const auto& b : f.branches) {
                const PlaceId s = place();
                starts.push_back(s);
                ends.push_back(chain(s, b));
            }
            tau({x}, starts);
            tau(ends, {y});
            break;
        }
        case Construct::Or: {
            // One silent split per non-empty subset of branches; every branch ends in a
            // done place, and a skip place stands in for unchosen branches.
            const std::size_t n = f.branches.size();
            if (n > 8) throw InvalidArgument("too many Or branches");
            std::vector<PlaceId> starts, done, skipped;
            for (const auto& b : f.branches) {
                const PlaceId s = place();
                starts.push_back(s);
                done.push_back(chain(s, b));
                skipped.push_back(done.back());
            }
            for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
                std::vector<PlaceId> out;
                for (std::size_t i = 0; i < n; ++i) out.push_back((mask >> i) & 1 ? starts[i] : skipped[i]);
                tau({x}, out);
            }
            tau(done, {y});
            break;
        }
    }
    if (is_optional(f.variant)) tau({x}, {y});
    if (is_repeatable(f.variant)) tau({y}, {x});

    if (f.followers.empty()) {
        tau({y}, {source});
    } else {
        chain(y, f.followers, source);
    }
    net.set_initial(net.marking_of({source}));
    net.add_final(net.marking_of({source}));
    return net;
}

std::optional<Trace> validate_rewrite(const ProcessFrame& frame, const Dfa& reference, std::size_t state_cap) {
    return find_counterexample(global_dfa(frame, state_cap), reference);
}

ProcessFrame assemble_frame(const std::vector<DetectedFragment>& fragments, const std::vector<Constraint>& residual,
                            const ActivitySet& alphabet) {
    ProcessFrame frame;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        frame.add(Specification::net("fragment" + std::to_string(i + 1), fragments[i].net));
    }
    frame.add(Specification::declare("residual", residual, alphabet));
    return frame;
}

bool has_branch_recurrence(const Trace& trace, const std::vector<std::vector<Activity>>& branches,
                           const std::optional<Activity>& iteration_start) {
    struct Run {
        bool open = false;
        std::size_t start = 0;
        std::optional<std::size_t> last_end;
    };
    std::vector<Run> runs(branches.size());
    for (std::size_t p = 0; p < trace.size(); ++p) {
        const Activity& e = trace[p];
        if (iteration_start && e == *iteration_start) {
            runs.assign(branches.size(), Run{});
            continue;
        }
        for (std::size_t x = 0; x < branches.size(); ++x) {
            const auto& bx = branches[x];
            if (bx.empty()) continue;
            if (e == bx.front()) {
                // A restart is only legal once every branch open during the previous run
                // has joined.
                if (runs[x].last_end) {
                    for (std::size_t y = 0; y < branches.size(); ++y) {
                        if (y != x && runs[y].open && runs[y].start < *runs[x].last_end) return true;
                    }
                }
                runs[x].start = p;
                runs[x].open = bx.size() > 1;
                if (bx.size() == 1) runs[x].last_end = p;
            } else if (bx.size() > 1 && e == bx.back() && runs[x].open) {
                runs[x].open = false;
                runs[x].last_end = p;
            }
        }
    }
    return false;
}

namespace {

using K = TemplateKind;

class ConstraintIndex {
public:
    explicit ConstraintIndex(const std::vector<Constraint>& cs) : set_(cs.begin(), cs.end()) {}
    bool has(K kind, const Activity& a, const Activity& b) const {
        if (a == b && kind != K::NotChainSuccession) return false;
        return set_.contains(Constraint(kind, {a, b}));
    }
    bool has(K kind, const Activity& a, const Activity& b, const Activity& c) const {
        if (a == b || b == c || a == c) return false;
        return set_.contains(Constraint(kind, {a, b, c}));
    }

private:
    std::set<Constraint> set_;
};

// Activities linked by AlternateSuccession, each a totally or partially ordered group.
std::vector<std::vector<Activity>> alternate_groups(const ActivitySet& acts, const ConstraintIndex& idx) {
    std::map<Activity, Activity> parent;
    for (const auto& a : acts) parent[a] = a;
    auto find = [&](Activity a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& a : acts) {
        for (const auto& b : acts) {
            if (a != b && idx.has(K::AlternateSuccession, a, b)) parent[find(a)] = find(b);
        }
    }
    std::map<Activity, std::vector<Activity>> by_root;
    for (const auto& a : acts) by_root[find(a)].push_back(a);
    std::vector<std::vector<Activity>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

struct Group {
    std::vector<Activity> members;  // ordered by number of predecessors
    std::vector<Activity> backbone;  // members comparable to every other member
    bool total = false;
};

Group order_group(std::vector<Activity> members, const ConstraintIndex& idx) {
    auto lt = [&](const Activity& a, const Activity& b) { return idx.has(K::AlternateSuccession, a, b); };
    std::map<Activity, std::size_t> below;
    for (const auto& a : members) {
        for (const auto& b : members) below[a] += lt(b, a);
    }
    std::stable_sort(members.begin(), members.end(), [&](const auto& a, const auto& b) { return below[a] < below[b]; });
    Group g;
    for (const auto& a : members) {
        const bool comparable = std::all_of(members.begin(), members.end(),
                                            [&](const auto& b) { return a == b || lt(a, b) || lt(b, a); });
        if (comparable) g.backbone.push_back(a);
    }
    g.members = std::move(members);
    g.total = g.backbone.size() == g.members.size();
    return g;
}

// Position i in `outer` after which `inner` sits, if it nests there.
std::optional<std::size_t> nest_position(const std::vector<Activity>& inner, const std::vector<Activity>& outer,
                                         const ConstraintIndex& idx) {
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const bool before = std::all_of(inner.begin(), inner.end(),
                                        [&](const auto& g) { return idx.has(K::Precedence, outer[i], g); });
        if (before) pos = i;
    }
    if (!pos) return std::nullopt;
    if (*pos + 1 < outer.size()) {
        const auto& next = outer[*pos + 1];
        const bool after = std::all_of(inner.begin(), inner.end(),
                                       [&](const auto& g) { return idx.has(K::Response, g, next); });
        if (!after) return std::nullopt;
    }
    return pos;
}

Construct classify(const std::vector<std::vector<Activity>>& branches, const ConstraintIndex& idx,
                   const ActivitySet& acts) {
    if (branches.size() == 1) return Construct::Sequence;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        for (std::size_t j = 0; j < branches.size(); ++j) {
            if (i == j) continue;
            for (const auto& x : branches[i]) {
                for (const auto& y : branches[j]) {
                    for (const auto& z : acts) {
                        if (idx.has(K::BalancedEnablement, x, y, z)) return Construct::Parallel;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        for (std::size_t j = 0; j < branches.size(); ++j) {
            if (i == j) continue;
            for (const auto& x : branches[i]) {
                for (const auto& y : branches[j]) {
                    const bool loop_edge = x == branches[i].back() && y == branches[j].front();
                    if (!loop_edge && !idx.has(K::NotChainSuccession, x, y)) return Construct::Or;
                }
            }
        }
    }
    return Construct::Xor;
}

// Candidate whose region sits between outer[pos] and outer[pos + 1] (or the next iteration).
std::optional<DetectedFragment> region_candidate(const std::vector<Activity>& outer, std::size_t pos,
                                                 std::vector<std::vector<Activity>> branches,
                                                 const ConstraintIndex& idx, const CardinalityProfile& profile,
                                                 const ActivitySet& acts, bool internal) {
    std::sort(branches.begin(), branches.end());
    const Activity& pred = outer[pos];
    const Activity& next = pos + 1 < outer.size() ? outer[pos + 1] : outer.front();
    for (const auto& b : branches) {
        if (idx.has(K::NotChainSuccession, pred, b.front())) return std::nullopt;
    }
    DetectedFragment f;
    f.construct = internal ? Construct::Parallel : classify(branches, idx, acts);
    if (internal && branches.size() == 1) return std::nullopt;
    bool optional = false;
    bool repeatable = false;
    if (!internal) {
        optional = !idx.has(K::NotChainSuccession, pred, next);
        const auto out = profile.at(pred, branches.front().front()).outgoing;
        repeatable = out == Cardinality::OneMany || out == Cardinality::ZeroMany;
    }
    f.variant = make_variant(optional, repeatable);
    f.predecessors.assign(outer.begin(), outer.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
    f.followers.assign(outer.begin() + static_cast<std::ptrdiff_t>(pos) + 1, outer.end());
    f.branches = std::move(branches);
    return f;
}

std::vector<DetectedFragment> candidates(const MinedModel& model, const ActivitySet& acts) {
    const ConstraintIndex idx(model.constraints);
    const CardinalityProfile profile = cardinality_profile(model);
    std::vector<Group> groups;
    for (auto& members : alternate_groups(acts, idx)) groups.push_back(order_group(std::move(members), idx));

    std::vector<DetectedFragment> out;
    std::vector<bool> used(groups.size(), false);

    // Parallelism inside one group: incomparable members between two backbone positions.
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        if (g.total || g.backbone.empty()) continue;
        auto lt = [&](const Activity& a, const Activity& b) { return idx.has(K::AlternateSuccession, a, b); };
        std::map<std::size_t, std::vector<Activity>> gaps;
        for (const auto& a : g.members) {
            if (std::find(g.backbone.begin(), g.backbone.end(), a) != g.backbone.end()) continue;
            std::size_t before = 0;
            for (const auto& b : g.backbone) before += lt(b, a);
            if (before == 0) continue;
            gaps[before - 1].push_back(a);
        }
        if (gaps.size() != 1) continue;
        auto& [pos, region] = *gaps.begin();
        // Branches are the comparability components of the region.
        std::vector<std::vector<Activity>> branches;
        for (const auto& a : region) {
            auto it = std::find_if(branches.begin(), branches.end(), [&](const auto& br) {
                return std::any_of(br.begin(), br.end(), [&](const auto& b) { return lt(a, b) || lt(b, a); });
            });
            if (it == branches.end()) {
                branches.push_back({a});
            } else {
                it->push_back(a);
            }
        }
        if (auto f = region_candidate(g.backbone, pos, branches, idx, profile, acts, true)) {
            out.push_back(std::move(*f));
            used[gi] = true;
        }
    }

    // Regions made of other groups nested between two members of an outer chain.
    std::vector<std::vector<std::optional<std::size_t>>> nests(groups.size(),
                                                               std::vector<std::optional<std::size_t>>(groups.size()));
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = 0; j < groups.size(); ++j) {
            if (i == j || !groups[i].total || !groups[j].total || used[i] || used[j]) continue;
            nests[i][j] = nest_position(groups[i].members, groups[j].members, idx);
        }
    }
    auto nested_anywhere = [&](std::size_t i) {
        return std::any_of(nests[i].begin(), nests[i].end(), [](const auto& p) { return p.has_value(); });
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Activity>>> regions;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < groups.size(); ++j) {
            if (!nests[i][j] || nested_anywhere(j)) continue;
            if (!best || groups[j].members.size() > groups[*best].members.size()) best = j;
        }
        if (best) regions[{*best, *nests[i][*best]}].push_back(groups[i].members);
    }
    for (auto& [key, branches] : regions) {
        const auto [outer, pos] = key;
        std::vector<std::size_t> inner;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (nests[i][outer] == pos && std::find(branches.begin(), branches.end(), groups[i].members) != branches.end()) {
                inner.push_back(i);
            }
        }
        if (auto f = region_candidate(groups[outer].members, pos, branches, idx, profile, acts, false)) {
            out.push_back(std::move(*f));
            used[outer] = true;
            for (auto i : inner) used[i] = true;
        }
    }

    // Leftover chains read as mandatory sequences.
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        if (used[gi] || !g.total || g.members.size() < 2) continue;
        DetectedFragment f;
        f.construct = Construct::Sequence;
        f.variant = Variant::Mandatory;
        f.predecessors = {g.members.front()};
        if (g.members.size() == 2) {
            f.branches = {{g.members.back()}};
        } else {
            f.branches = {std::vector<Activity>(g.members.begin() + 1, g.members.end() - 1)};
            f.followers = {g.members.back()};
        }
        out.push_back(std::move(f));
    }

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const auto sa = a.activities();
        const auto sb = b.activities();
        if (sa.size() != sb.size()) return sa.size() > sb.size();
        return sa < sb;
    });
    return out;
}

// Constraints tying the fragment to the start activity are kept only where the net does
// not already imply them together with the anchors still kept. Ternary ones go first, so
// the binary anchors to the start survive.
void consume_redundant_anchors(DetectedFragment& f, const Dfa& net_dfa, const MinedModel& model,
                               const std::set<Constraint>& taken, const Activity& start, std::size_t state_cap) {
    const ActivitySet alph = f.activities();
    const std::set<Constraint> own(f.consumed.begin(), f.consumed.end());
    std::vector<Constraint> anchors;
    for (const auto& c : model.constraints) {
        if (taken.contains(c) || own.contains(c)) continue;
        const auto& args = c.args();
        if (std::find(args.begin(), args.end(), start) == args.end()) continue;
        const bool local = std::all_of(args.begin(), args.end(), [&](const auto& a) { return a == start || alph.contains(a); });
        if (local && std::any_of(args.begin(), args.end(), [&](const auto& a) { return a != start; })) anchors.push_back(c);
    }
    std::stable_sort(anchors.begin(), anchors.end(),
                     [](const auto& a, const auto& b) { return a.args().size() > b.args().size(); });
    std::vector<Dfa> kept;
    kept.reserve(anchors.size());
    for (const auto& c : anchors) kept.push_back(compile(c));
    std::vector<bool> dropped(anchors.size(), false);
    const Dfa net = embed(net_dfa, alph);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        std::vector<Dfa> rest{net};
        for (std::size_t j = 0; j < anchors.size(); ++j) {
            if (j != i && !dropped[j]) rest.push_back(kept[j]);
        }
        const Dfa without = intersect_all(rest, state_cap);
        const std::vector<Dfa> with{without, kept[i]};
        if (!find_counterexample(product(with, state_cap), without)) {
            dropped[i] = true;
            f.consumed.push_back(anchors[i]);
        }
    }
}

}  // namespace

FrameRewrite detect(const MinedModel& model, const EventLog& log, const DetectOptions& options) {
    ActivitySet acts = model.alphabet;
    if (options.start) acts.erase(*options.start);

    const Dfa reference = mined_dfa(model, options.state_cap);
    std::set<Constraint> consumed_all;
    FrameRewrite out;

    auto residual_now = [&] {
        std::vector<Constraint> r;
        for (const auto& c : model.constraints) {
            if (!consumed_all.contains(c)) r.push_back(c);
        }
        return r;
    };
    auto reject = [&](DetectedFragment f, Trace cx) {
        f.counterexample = std::move(cx);
        out.rejected.push_back(std::move(f));
    };

    std::optional<std::vector<Trace>> enumerated;
    for (auto f : candidates(model, acts)) {
        f.net = synthesize_net(f);
        const ActivitySet alph = f.activities();

        const auto bad_trace = std::find_if(log.begin(), log.end(),
                                            [&](const Trace& t) { return !net_accepts(f.net, project(t, alph), options.state_cap); });
        if (bad_trace != log.end()) {
            reject(std::move(f), project(*bad_trace, alph));
            continue;
        }

        if (f.construct == Construct::Or && is_repeatable(f.variant)) {
            if (!enumerated) enumerated = enumerate(reference, options.revisit_bound);
            const Trace* hit = nullptr;
            for (const auto& t : *enumerated) {
                if ((!hit || t.size() < hit->size()) && has_branch_recurrence(t, f.branches, f.predecessors.back())) {
                    hit = &t;
                }
            }
            if (hit) {
                f.approximate = true;
                reject(std::move(f), *hit);
                continue;
            }
        }

        const Dfa net_dfa = net_to_dfa(f.net, options.state_cap);
        for (const auto& c : model.constraints) {
            if (consumed_all.contains(c)) continue;
            const auto& args = c.args();
            if (!std::all_of(args.begin(), args.end(), [&](const auto& a) { return alph.contains(a); })) continue;
            const std::vector<Dfa> pair{net_dfa, compile(c)};
            if (!find_counterexample(product(pair, options.state_cap), net_dfa)) f.consumed.push_back(c);
        }
        if (options.start) consume_redundant_anchors(f, net_dfa, model, consumed_all, *options.start, options.state_cap);
        std::sort(f.consumed.begin(), f.consumed.end());
        consumed_all.insert(f.consumed.begin(), f.consumed.end());

        auto trial = out.fragments;
        trial.push_back(f);
        auto cx = validate_rewrite(assemble_frame(trial, residual_now(), model.alphabet), reference, options.state_cap);
        if (cx) {
            for (const auto& c : f.consumed) consumed_all.erase(c);
            f.consumed.clear();
            reject(std::move(f), std::move(*cx));
            continue;
        }
        out.fragments.push_back(std::move(f));
    }

    out.residual = residual_now();
    out.frame = assemble_frame(out.fragments, out.residual, model.alphabet);
    out.counterexample = validate_rewrite(out.frame, reference, options.state_cap);
    return out;
}

}  // namespace procframe
