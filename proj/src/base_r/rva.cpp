#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "tame/base_r.hpp"
#include "tame/errors.hpp"

namespace tame {

namespace {

std::vector<std::vector<int>> strongly_connected_components(const Rva& a) {
    const int n = static_cast<int>(a.states.size());
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (const auto& [key, to] : a.transitions) succ[static_cast<std::size_t>(key.first)].push_back(to);

    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : succ[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w = -1;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v) {
        if (index[v] < 0) visit(v);
    }
    return out;
}

std::string symbol_text(const Rva::Symbol& s) {
    if (s.empty()) return "⋆";
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

}  // namespace

int Rva::state_index(const std::string& name) const {
    const auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw InvalidArgument("unknown state '" + name + "'");
    return static_cast<int>(it - states.begin());
}

void Rva::validate() const {
    if (n < 1) throw InvalidArgument("automaton arity must be positive");
    if (r < 2 || r > 36) throw InvalidArgument("automaton base must be in [2,36]");
    if (states.empty()) throw InvalidArgument("automaton has no states");
    if (std::set<std::string>(states.begin(), states.end()).size() != states.size()) {
        throw InvalidArgument("duplicate state names");
    }
    const int count = static_cast<int>(states.size());
    if (initial < 0 || initial >= count) throw InvalidArgument("initial state out of range");
    for (const auto& [key, to] : transitions) {
        const auto& [from, symbol] = key;
        if (from < 0 || from >= count || to < 0 || to >= count) throw InvalidArgument("transition state out of range");
        if (!symbol.empty()) {
            if (static_cast<int>(symbol.size()) != n) throw InvalidArgument("symbol arity mismatch " + symbol_text(symbol));
            for (int d : symbol) {
                if (d < 0 || d >= r) throw InvalidArgument("symbol digit out of range " + symbol_text(symbol));
            }
        }
    }
    const auto sccs = strongly_connected_components(*this);
    for (const auto& acc : accepting_sccs) {
        std::vector<int> sorted = acc;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.empty() || std::find(sccs.begin(), sccs.end(), sorted) == sccs.end()) {
            throw InvalidArgument("accepting set is not a strongly connected component");
        }
    }
}

RvaResult rva_membership(const Rva& a, const std::vector<DigitWord>& words) {
    a.validate();
    if (static_cast<int>(words.size()) != a.n) {
        throw InvalidArgument("expected " + std::to_string(a.n) + " words, got " + std::to_string(words.size()));
    }
    int top = 0;
    int depth = 0;
    std::size_t period = 1;
    for (const DigitWord& w : words) {
        w.validate();
        if (w.r != a.r) throw InvalidArgument("word base differs from automaton base");
        top = std::max(top, w.p);
        depth = std::max(depth, w.precision);
        period = std::lcm(period, std::max<std::size_t>(1, w.tail.size()));
    }
    auto column = [&](int m) {
        Rva::Symbol s;
        for (const DigitWord& w : words) s.push_back(w.digit_at(m));
        return s;
    };

    RvaResult out;
    int state = a.initial;
    auto step = [&](const Rva::Symbol& s) {
        const auto it = a.transitions.find({state, s});
        if (it == a.transitions.end()) {
            out.diagnostic = "no transition from '" + a.states[static_cast<std::size_t>(state)] + "' on " + symbol_text(s);
            return false;
        }
        state = it->second;
        return true;
    };
    for (int m = top; m >= 0; --m) {
        if (!step(column(m))) return out;
    }
    if (!step({})) return out;
    for (int m = -1; m >= -depth; --m) {
        if (!step(column(m))) return out;
    }

    std::vector<Rva::Symbol> cycle;
    for (std::size_t k = 0; k < period; ++k) cycle.push_back(column(-depth - 1 - static_cast<int>(k)));
    std::vector<int> starts;
    std::vector<std::vector<int>> visited;
    while (std::find(starts.begin(), starts.end(), state) == starts.end()) {
        starts.push_back(state);
        std::vector<int> seen;
        for (const auto& s : cycle) {
            if (!step(s)) return out;
            seen.push_back(state);
        }
        visited.push_back(std::move(seen));
    }
    const auto loop_begin = static_cast<std::size_t>(std::find(starts.begin(), starts.end(), state) - starts.begin());
    std::set<int> loop_states;
    for (std::size_t i = loop_begin; i < visited.size(); ++i) loop_states.insert(visited[i].begin(), visited[i].end());
    for (const auto& acc : a.accepting_sccs) {
        const std::set<int> component(acc.begin(), acc.end());
        if (std::includes(component.begin(), component.end(), loop_states.begin(), loop_states.end())) {
            out.accepted = true;
            return out;
        }
    }
    out.diagnostic = "run settles outside every accepting component";
    return out;
}

}  // namespace tame
