#include "procframe/miner.hpp"

#include <algorithm>

#include "procframe/error.hpp"

namespace procframe {

std::vector<TemplateKind> MinerConfig::default_templates() {
    return {TemplateKind::Response,           TemplateKind::Precedence,
            TemplateKind::Succession,         TemplateKind::AlternateResponse,
            TemplateKind::AlternatePrecedence, TemplateKind::AlternateSuccession,
            TemplateKind::NotChainSuccession, TemplateKind::Interposition,
            TemplateKind::BalancedEnablement};
}

std::vector<TemplateKind> MinerConfig::all_templates() { return compilable_kinds(); }

namespace {

struct Variant {
    std::vector<SymbolId> events;
    std::size_t count;
};

std::vector<Variant> variants_of(const EventLog& log, const SymbolTable& table) {
    std::map<std::vector<SymbolId>, std::size_t> counts;
    for (const auto& t : log) ++counts[table.intern(t)];
    std::vector<Variant> out;
    out.reserve(counts.size());
    for (auto& [events, n] : counts) out.push_back({events, n});
    return out;
}

std::vector<std::vector<SymbolId>> candidate_tuples(TemplateKind kind, std::size_t n) {
    std::vector<std::vector<SymbolId>> out;
    const auto k = static_cast<SymbolId>(n);
    switch (arity(kind)) {
        case 1:
            for (SymbolId a = 0; a < k; ++a) out.push_back({a});
            break;
        case 2:
            for (SymbolId a = 0; a < k; ++a) {
                for (SymbolId b = 0; b < k; ++b) {
                    if (a != b || kind == TemplateKind::NotChainSuccession) out.push_back({a, b});
                }
            }
            break;
        default:
            for (SymbolId a = 0; a < k; ++a) {
                for (SymbolId b = 0; b < k; ++b) {
                    for (SymbolId c = 0; c < k; ++c) {
                        if (a != b && b != c && a != c) out.push_back({a, b, c});
                    }
                }
            }
            break;
    }
    return out;
}

}  // namespace

MinedModel mine(const EventLog& input, const MinerConfig& cfg) {
    if (input.empty()) throw EmptyLog("cannot mine an empty log");
    if (cfg.support_threshold != 1.0) throw InvalidArgument("only a support threshold of 1.0 is supported");
    for (TemplateKind kind : cfg.templates) {
        const auto ok = compilable_kinds();
        if (std::find(ok.begin(), ok.end(), kind) == ok.end()) {
            throw UnsupportedTemplate("cannot mine " + std::string(kind_name(kind)));
        }
    }

    const EventLog log = cfg.include_start ? prepend_start(input, cfg.start) : input;
    const SymbolTable table(log.alphabet());
    const std::vector<Variant> variants = variants_of(log, table);
    const std::size_t n = table.size();

    std::vector<TemplateKind> kinds = cfg.templates;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

    MinedModel model;
    model.alphabet = log.alphabet();
    std::vector<std::size_t> columns(n);
    std::vector<char> activates(n);
    for (TemplateKind kind : kinds) {
        if (arity(kind) == 3 && !cfg.ternary_enabled) continue;
        for (const auto& tuple : candidate_tuples(kind, n)) {
            std::vector<Activity> args;
            for (SymbolId id : tuple) args.push_back(table.name(id));
            Constraint c(kind, std::move(args));
            const Dfa dfa = compile(c);
            for (SymbolId s = 0; s < n; ++s) {
                columns[s] = dfa.column_of(table.name(s));
                activates[s] = is_activation(c, table.name(s)) ? 1 : 0;
            }
            Provenance prov;
            bool violated = false;
            for (const auto& v : variants) {
                StateId state = dfa.initial();
                bool active = false;
                for (SymbolId e : v.events) {
                    state = dfa.next(state, columns[e]);
                    active = active || activates[e] != 0;
                }
                if (!dfa.is_accepting(state)) {
                    violated = true;
                    break;
                }
                prov.satisfying_traces += v.count;
                if (active) prov.activating_traces += v.count;
            }
            if (violated || prov.activating_traces == 0) continue;
            model.provenance.emplace(c, prov);
            model.constraints.push_back(std::move(c));
        }
    }
    std::sort(model.constraints.begin(), model.constraints.end());
    return model;
}

Dfa mined_dfa(const MinedModel& model, std::size_t state_cap) {
    std::vector<Dfa> parts;
    parts.reserve(model.constraints.size());
    for (const auto& c : model.constraints) parts.push_back(compile(c));
    const Dfa conj = parts.empty() ? Dfa::universal() : intersect_all(parts, state_cap);
    ActivitySet local = model.alphabet;
    local.insert(conj.symbols().begin(), conj.symbols().end());
    return minimize(embed(conj, local));
}

}  // namespace procframe
