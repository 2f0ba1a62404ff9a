#include "procframe/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "procframe/error.hpp"

namespace procframe {

namespace {

struct TupleHash {
    std::size_t operator()(const std::vector<StateId>& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (StateId x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Column in `dfa` for every column of an automaton over `symbols` (default last).
std::vector<std::size_t> column_map(const Dfa& dfa, const std::vector<Activity>& symbols) {
    std::vector<std::size_t> map;
    map.reserve(symbols.size() + 1);
    for (const auto& s : symbols) map.push_back(dfa.column_of(s));
    map.push_back(dfa.default_column());
    return map;
}

std::vector<Activity> union_symbols(std::span<const Dfa> dfas) {
    ActivitySet all;
    for (const auto& d : dfas) all.insert(d.symbols().begin(), d.symbols().end());
    return {all.begin(), all.end()};
}

}  // namespace

Dfa::Dfa(std::vector<Activity> symbols, std::size_t num_states, StateId initial,
         std::vector<bool> accepting, std::vector<StateId> table)
    : symbols_(std::move(symbols)),
      initial_(initial),
      accepting_(std::move(accepting)),
      table_(std::move(table)) {
    if (num_states == 0) throw InvalidArgument("automaton needs at least one state");
    if (accepting_.size() != num_states) throw InvalidArgument("accepting vector has wrong size");
    if (table_.size() != num_states * (symbols_.size() + 1)) {
        throw InvalidArgument("transition table has wrong size");
    }
    if (initial_ >= num_states) throw InvalidArgument("initial state out of range");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        require_valid_activity(symbols_[i]);
        if (i > 0 && !(symbols_[i - 1] < symbols_[i])) {
            throw InvalidArgument("explicit symbols must be sorted and unique");
        }
    }
    for (StateId t : table_) {
        if (t >= num_states) throw InvalidArgument("transition target out of range");
    }
}

Dfa Dfa::universal() { return Dfa({}, 1, 0, {true}, {0}); }

Dfa Dfa::empty_language() { return Dfa({}, 1, 0, {false}, {0}); }

std::optional<std::size_t> Dfa::symbol_index(std::string_view activity) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), activity,
                               [](const Activity& a, std::string_view b) { return a < b; });
    if (it == symbols_.end() || *it != activity) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
}

std::size_t Dfa::column_of(std::string_view activity) const {
    return symbol_index(activity).value_or(default_column());
}

StateId Dfa::run(const Trace& trace) const {
    StateId s = initial_;
    for (const auto& a : trace) s = step(s, a);
    return s;
}

bool accepts(const Dfa& dfa, const Trace& trace) { return dfa.is_accepting(dfa.run(trace)); }

std::vector<bool> dead_states(const Dfa& dfa) {
    const std::size_t n = dfa.num_states();
    std::vector<std::vector<StateId>> preds(n);
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t c = 0; c < dfa.num_columns(); ++c) preds[dfa.next(s, c)].push_back(s);
    }
    std::vector<bool> live(n, false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < n; ++s) {
        if (dfa.is_accepting(s)) {
            live[s] = true;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        StateId t = stack.back();
        stack.pop_back();
        for (StateId p : preds[t]) {
            if (!live[p]) {
                live[p] = true;
                stack.push_back(p);
            }
        }
    }
    std::vector<bool> dead(n);
    for (StateId s = 0; s < n; ++s) dead[s] = !live[s];
    return dead;
}

Dfa embed(const Dfa& dfa, const ActivitySet& local_alphabet) {
    for (const auto& s : dfa.symbols()) {
        if (!local_alphabet.contains(s)) {
            throw AlphabetMismatch("explicit symbol '" + s + "' is not in the local alphabet");
        }
    }
    std::vector<Activity> symbols(local_alphabet.begin(), local_alphabet.end());
    const std::size_t n = dfa.num_states();
    const std::size_t cols = symbols.size() + 1;
    std::vector<StateId> table(n * cols);
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t j = 0; j < symbols.size(); ++j) table[s * cols + j] = dfa.step(s, symbols[j]);
        table[s * cols + symbols.size()] = s;
    }
    return Dfa(std::move(symbols), n, dfa.initial(), dfa.accepting(), std::move(table));
}

Dfa product(std::span<const Dfa> dfas, std::size_t state_cap) {
    if (dfas.empty()) throw InvalidArgument("product of an empty list of automata");
    std::vector<Activity> symbols = union_symbols(dfas);
    const std::size_t cols = symbols.size() + 1;
    std::vector<std::vector<std::size_t>> maps;
    maps.reserve(dfas.size());
    for (const auto& d : dfas) maps.push_back(column_map(d, symbols));

    std::unordered_map<std::vector<StateId>, StateId, TupleHash> index;
    std::vector<std::vector<StateId>> tuples;
    std::vector<StateId> table;
    std::vector<bool> accepting;

    auto intern = [&](std::vector<StateId> tuple) -> StateId {
        auto [it, inserted] = index.try_emplace(tuple, static_cast<StateId>(tuples.size()));
        if (inserted) {
            if (tuples.size() >= state_cap) {
                throw StateBudgetExceeded("product exceeds the state cap of " +
                                          std::to_string(state_cap));
            }
            bool acc = true;
            for (std::size_t i = 0; i < dfas.size(); ++i) acc = acc && dfas[i].is_accepting(tuple[i]);
            accepting.push_back(acc);
            tuples.push_back(std::move(tuple));
        }
        return it->second;
    };

    std::vector<StateId> start;
    for (const auto& d : dfas) start.push_back(d.initial());
    intern(std::move(start));
    for (std::size_t cur = 0; cur < tuples.size(); ++cur) {
        table.resize((cur + 1) * cols);
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<StateId> next(dfas.size());
            for (std::size_t i = 0; i < dfas.size(); ++i) {
                next[i] = dfas[i].next(tuples[cur][i], maps[i][c]);
            }
            table[cur * cols + c] = intern(std::move(next));
        }
    }
    const std::size_t n = tuples.size();
    return Dfa(std::move(symbols), n, 0, std::move(accepting), std::move(table));
}

namespace {

// Product of two automata. Pairs with a dead component all collapse into one trap state,
// which keeps the exploration close to the size of the minimal result.
Dfa pair_product(const Dfa& a, const Dfa& b, std::size_t state_cap) {
    const Dfa both[] = {a, b};
    std::vector<Activity> symbols = union_symbols(both);
    const std::size_t cols = symbols.size() + 1;
    const auto map_a = column_map(a, symbols);
    const auto map_b = column_map(b, symbols);
    const auto dead_a = dead_states(a);
    const auto dead_b = dead_states(b);

    constexpr std::uint64_t trap_key = ~std::uint64_t{0};
    std::unordered_map<std::uint64_t, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<bool> accepting;
    std::vector<StateId> table;
    std::optional<StateId> trap;

    auto intern = [&](StateId x, StateId y) -> StateId {
        const bool dead = dead_a[x] || dead_b[y];
        const std::uint64_t key = dead ? trap_key : (static_cast<std::uint64_t>(x) << 32) | y;
        auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(pairs.size()));
        if (inserted) {
            if (pairs.size() >= state_cap) {
                throw StateBudgetExceeded("product exceeds the state cap of " + std::to_string(state_cap));
            }
            if (dead) trap = it->second;
            pairs.emplace_back(x, y);
            accepting.push_back(!dead && a.is_accepting(x) && b.is_accepting(y));
        }
        return it->second;
    };

    intern(a.initial(), b.initial());
    for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
        table.resize((cur + 1) * cols);
        const auto [x, y] = pairs[cur];
        for (std::size_t c = 0; c < cols; ++c) {
            table[cur * cols + c] =
                trap == static_cast<StateId>(cur) ? *trap : intern(a.next(x, map_a[c]), b.next(y, map_b[c]));
        }
    }
    const std::size_t n = pairs.size();
    return Dfa(std::move(symbols), n, 0, std::move(accepting), std::move(table));
}

}  // namespace

Dfa intersect_all(std::span<const Dfa> dfas, std::size_t state_cap) {
    if (dfas.empty()) throw InvalidArgument("intersection of an empty list of automata");
    // Greedy order: next is the automaton adding the fewest new symbols, so intermediate
    // results constrain every symbol they mention. Ties keep input order.
    std::vector<bool> used(dfas.size(), false);
    ActivitySet seen(dfas[0].symbols().begin(), dfas[0].symbols().end());
    used[0] = true;
    Dfa acc = minimize(dfas[0]);
    for (std::size_t step = 1; step < dfas.size(); ++step) {
        std::size_t best = dfas.size();
        std::size_t best_new = 0;
        for (std::size_t i = 0; i < dfas.size(); ++i) {
            if (used[i]) continue;
            std::size_t fresh = 0;
            for (const auto& s : dfas[i].symbols()) fresh += !seen.contains(s);
            if (best == dfas.size() || fresh < best_new) {
                best = i;
                best_new = fresh;
                if (fresh == 0) break;
            }
        }
        used[best] = true;
        seen.insert(dfas[best].symbols().begin(), dfas[best].symbols().end());
        acc = minimize(pair_product(acc, dfas[best], state_cap));
    }
    return acc;
}

Dfa complement(const Dfa& dfa) {
    std::vector<bool> flipped(dfa.num_states());
    for (StateId s = 0; s < dfa.num_states(); ++s) flipped[s] = !dfa.is_accepting(s);
    return Dfa(dfa.symbols(), dfa.num_states(), dfa.initial(), std::move(flipped), dfa.table());
}

namespace {

// Hopcroft partition refinement over the reachable part. Returns the block of every
// reachable state (unreachable states get npos).
std::vector<std::size_t> hopcroft_blocks(const Dfa& dfa, const std::vector<StateId>& reachable) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    const std::size_t n = reachable.size();
    const std::size_t cols = dfa.num_columns();

    std::vector<std::size_t> local(dfa.num_states(), npos);
    for (std::size_t i = 0; i < n; ++i) local[reachable[i]] = i;

    // Inverse transitions, CSR per column.
    std::vector<std::vector<std::size_t>> inv_start(cols, std::vector<std::size_t>(n + 1, 0));
    std::vector<std::vector<std::size_t>> inv_src(cols, std::vector<std::size_t>(n));
    for (std::size_t c = 0; c < cols; ++c) {
        auto& start = inv_start[c];
        for (std::size_t i = 0; i < n; ++i) ++start[local[dfa.next(reachable[i], c)] + 1];
        for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            inv_src[c][fill[local[dfa.next(reachable[i], c)]]++] = i;
        }
    }

    struct Block {
        std::size_t begin, end, mid;
    };
    std::vector<std::size_t> elems(n), pos(n), block_of(n);
    std::vector<Block> blocks;
    {
        std::size_t k = 0;
        for (int pass = 0; pass < 2; ++pass) {
            const bool want = pass == 0;
            const std::size_t begin = k;
            for (std::size_t i = 0; i < n; ++i) {
                if (dfa.is_accepting(reachable[i]) == want) {
                    elems[k] = i;
                    pos[i] = k;
                    ++k;
                }
            }
            if (k > begin) {
                for (std::size_t j = begin; j < k; ++j) block_of[elems[j]] = blocks.size();
                blocks.push_back({begin, k, begin});
            }
        }
    }

    std::deque<std::size_t> worklist;
    for (std::size_t b = 0; b < blocks.size(); ++b) worklist.push_back(b);

    std::vector<std::size_t> touched;
    while (!worklist.empty()) {
        const std::size_t splitter = worklist.front();
        worklist.pop_front();
        const std::vector<std::size_t> members(elems.begin() + blocks[splitter].begin,
                                               elems.begin() + blocks[splitter].end);
        for (std::size_t c = 0; c < cols; ++c) {
            touched.clear();
            for (std::size_t t : members) {
                for (std::size_t k = inv_start[c][t]; k < inv_start[c][t + 1]; ++k) {
                    const std::size_t p = inv_src[c][k];
                    Block& blk = blocks[block_of[p]];
                    if (pos[p] < blk.mid) continue;  // already marked
                    if (blk.mid == blk.begin) touched.push_back(block_of[p]);
                    const std::size_t q = elems[blk.mid];
                    std::swap(elems[pos[p]], elems[blk.mid]);
                    pos[q] = pos[p];
                    pos[p] = blk.mid;
                    ++blk.mid;
                }
            }
            for (std::size_t y : touched) {
                Block& blk = blocks[y];
                if (blk.mid == blk.end) {
                    blk.mid = blk.begin;
                    continue;
                }
                const std::size_t marked = blk.mid - blk.begin;
                const std::size_t unmarked = blk.end - blk.mid;
                Block fresh{};
                if (marked <= unmarked) {
                    fresh = {blk.begin, blk.mid, blk.begin};
                    blk.begin = blk.mid;
                } else {
                    fresh = {blk.mid, blk.end, blk.mid};
                    blk.end = blk.mid;
                }
                blk.mid = blk.begin;
                const std::size_t id = blocks.size();
                for (std::size_t j = fresh.begin; j < fresh.end; ++j) block_of[elems[j]] = id;
                blocks.push_back(fresh);
                worklist.push_back(id);
            }
        }
    }
    return block_of;
}

}  // namespace

Dfa minimize(const Dfa& dfa) {
    // Reachable states.
    std::vector<StateId> reachable;
    {
        std::vector<bool> seen(dfa.num_states(), false);
        seen[dfa.initial()] = true;
        reachable.push_back(dfa.initial());
        for (std::size_t i = 0; i < reachable.size(); ++i) {
            for (std::size_t c = 0; c < dfa.num_columns(); ++c) {
                StateId t = dfa.next(reachable[i], c);
                if (!seen[t]) {
                    seen[t] = true;
                    reachable.push_back(t);
                }
            }
        }
    }
    const std::vector<std::size_t> block_of = hopcroft_blocks(dfa, reachable);
    std::vector<std::size_t> local(dfa.num_states(), 0);
    for (std::size_t i = 0; i < reachable.size(); ++i) local[reachable[i]] = i;
    std::size_t num_blocks = 0;
    for (std::size_t b : block_of) num_blocks = std::max(num_blocks, b + 1);

    // Representative per block, then canonical breadth-first numbering.
    std::vector<StateId> rep(num_blocks, 0);
    for (std::size_t i = 0; i < reachable.size(); ++i) rep[block_of[i]] = reachable[i];

    constexpr StateId unset = static_cast<StateId>(-1);
    std::vector<StateId> number(num_blocks, unset);
    std::vector<std::size_t> order;
    const std::size_t init_block = block_of[local[dfa.initial()]];
    number[init_block] = 0;
    order.push_back(init_block);
    const std::size_t cols = dfa.num_columns();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId r = rep[order[i]];
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t b = block_of[local[dfa.next(r, c)]];
            if (number[b] == unset) {
                number[b] = static_cast<StateId>(order.size());
                order.push_back(b);
            }
        }
    }
    std::vector<StateId> table(order.size() * cols);
    std::vector<bool> accepting(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId r = rep[order[i]];
        accepting[i] = dfa.is_accepting(r);
        for (std::size_t c = 0; c < cols; ++c) {
            table[i * cols + c] = number[block_of[local[dfa.next(r, c)]]];
        }
    }
    return Dfa(dfa.symbols(), order.size(), 0, std::move(accepting), std::move(table));
}

Activity fresh_symbol(const Dfa& a, const Dfa& b) {
    Activity candidate = "__OTHER__";
    while (a.symbol_index(candidate) || b.symbol_index(candidate)) candidate += '_';
    return candidate;
}

std::optional<Trace> find_counterexample(const Dfa& a, const Dfa& b) {
    const Dfa both[] = {a, b};
    std::vector<Activity> symbols = union_symbols(both);
    const auto map_a = column_map(a, symbols);
    const auto map_b = column_map(b, symbols);
    const std::size_t cols = symbols.size() + 1;

    struct Node {
        StateId sa, sb;
        std::size_t parent;
        std::size_t column;
    };
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, std::size_t> seen;
    auto key = [](StateId x, StateId y) { return (static_cast<std::uint64_t>(x) << 32) | y; };

    nodes.push_back({a.initial(), b.initial(), none, none});
    seen.emplace(key(a.initial(), b.initial()), 0);
    for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
        const Node node = nodes[cur];
        if (a.is_accepting(node.sa) != b.is_accepting(node.sb)) {
            const Activity witness = fresh_symbol(a, b);
            Trace trace;
            for (std::size_t i = cur; nodes[i].parent != none; i = nodes[i].parent) {
                const std::size_t c = nodes[i].column;
                trace.push_back(c < symbols.size() ? symbols[c] : witness);
            }
            std::reverse(trace.begin(), trace.end());
            return trace;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const StateId ta = a.next(node.sa, map_a[c]);
            const StateId tb = b.next(node.sb, map_b[c]);
            if (seen.emplace(key(ta, tb), nodes.size()).second) {
                nodes.push_back({ta, tb, cur, c});
            }
        }
    }
    return std::nullopt;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !find_counterexample(a, b).has_value(); }

std::vector<Trace> enumerate(const Dfa& dfa, unsigned revisit_bound) {
    if (revisit_bound < 1) throw InvalidArgument("revisit bound must be at least 1");
    const std::vector<bool> dead = dead_states(dfa);
    const std::size_t limit = static_cast<std::size_t>(revisit_bound) + 1;
    const std::size_t k = dfa.symbols().size();

    std::vector<std::size_t> visits(dfa.num_states(), 0);
    std::vector<std::size_t> path;
    std::vector<Trace> out;

    std::function<void(StateId)> visit = [&](StateId s) {
        if (dfa.is_accepting(s)) {
            Trace t;
            t.reserve(path.size());
            for (std::size_t c : path) t.push_back(dfa.symbols()[c]);
            out.push_back(std::move(t));
        }
        for (std::size_t c = 0; c < k; ++c) {
            const StateId t = dfa.next(s, c);
            if (dead[t] || visits[t] >= limit) continue;
            ++visits[t];
            path.push_back(c);
            visit(t);
            path.pop_back();
            --visits[t];
        }
    };
    if (!dead[dfa.initial()]) {
        visits[dfa.initial()] = 1;
        visit(dfa.initial());
    }
    // Depth-first preorder over sorted symbols already yields lexicographic order, and
    // distinct runs of a deterministic automaton spell distinct words.
    return out;
}

namespace {

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

std::string to_dot(const Dfa& dfa, bool hide_trap, std::string_view name) {
    const std::vector<bool> dead = hide_trap ? dead_states(dfa) : std::vector<bool>(dfa.num_states());
    std::ostringstream out;
    out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
    for (StateId s = 0; s < dfa.num_states(); ++s) {
        if (dead[s]) continue;
        out << "  s" << s << " [label=\"" << s << "\", shape="
            << (dfa.is_accepting(s) ? "doublecircle" : "circle");
        if (s == dfa.initial()) out << ", style=bold";
        out << "];\n";
    }
    const auto& symbols = dfa.symbols();
    for (StateId s = 0; s < dfa.num_states(); ++s) {
        if (dead[s]) continue;
        const StateId def = dfa.default_successor(s);
        std::map<StateId, std::vector<std::string>> by_target;
        for (std::size_t c = 0; c < symbols.size(); ++c) {
            const StateId t = dfa.next(s, c);
            if (t != def) by_target[t].push_back(symbols[c]);
        }
        for (const auto& [t, labels] : by_target) {
            if (dead[t]) continue;
            std::string label;
            for (std::size_t i = 0; i < labels.size(); ++i) label += (i ? "," : "") + labels[i];
            out << "  s" << s << " -> s" << t << " [label=\"" << dot_escape(label) << "\"];\n";
        }
        if (!dead[def]) {
            std::string label;
            bool any = false;
            for (const auto& [t, labels] : by_target) {
                for (const auto& l : labels) {
                    label += (any ? "," : "") + l;
                    any = true;
                }
            }
            label = any ? "!{" + label + "}" : "*";
            out << "  s" << s << " -> s" << def << " [label=\"" << dot_escape(label) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace procframe
