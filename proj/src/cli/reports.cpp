#include "reports.hpp"

#include <charconv>
#include <sstream>

#include "tame/errors.hpp"

namespace tame::cli {

Json to_json(const Interval& i) { return i.to_string(); }

Json to_json(const SmoothnessCertificate& c) {
    Json regions = Json::array();
    for (const CertifiedRegion& r : c.regions) regions.push_back({{"interval", to_json(r.interval)}, {"sign", to_string(r.sign)}});
    return {{"label", SmoothnessCertificate::label},
            {"k", c.k},
            {"analyzed", to_json(c.analyzed)},
            {"coverage", c.coverage_fraction},
            {"grid", c.grid_used},
            {"max_depth", c.max_depth},
            {"eps_value", c.eps_value},
            {"regions", regions}};
}

Json to_json(const ConvexityResult& c) {
    return {{"verdict", to_string(c.verdict)},
            {"min_slack", c.min_slack},
            {"max_slack", c.max_slack},
            {"quadruples", c.quadruples}};
}

Json to_json(const RepetitionWitness& w) {
    return {{"x", w.x}, {"y", w.y}, {"delta", w.delta}, {"max_residual", w.max_residual}};
}

Json to_json(const AffineRegions& a) {
    Json regions = Json::array();
    for (const Interval& i : a.regions) regions.push_back(to_json(i));
    return {{"coverage", a.coverage}, {"max_depth", a.max_depth}, {"region_count", a.regions.size()},
            {"regions", regions}};
}

Json to_json(const TrichotomyReport& t) {
    Json rep = Json::array();
    for (const SubintervalRepetition& s : t.repetition) {
        rep.push_back({{"interval", to_json(s.interval)}, {"witness", s.witness ? to_json(*s.witness) : Json(nullptr)}});
    }
    return {{"smoothness", to_json(t.smoothness)},
            {"convexity", to_json(t.convexity)},
            {"repetition", rep},
            {"affine_coverage", t.affine_coverage},
            {"affine", to_json(t.affine)},
            {"verdict", to_string(t.verdict)}};
}

Json to_json(const NormalizationProvenance& p) {
    return {{"a0", p.a0}, {"b0", p.b0}, {"sign_flipped", p.sign_flipped}, {"q", p.q}, {"q_applied", p.q_applied},
            {"c", p.c},   {"N", p.N},   {"d", p.d},   {"case_ii", p.case_ii}};
}

Json to_json(const AxiomReport& a) {
    Json residuals = Json::object();
    for (const auto& [name, value] : a.residuals) residuals[name] = value;
    return {{"trials", a.trials},
            {"max_residual", a.max_residual},
            {"tolerance", a.tolerance},
            {"residuals", residuals},
            {"order_violations", a.order_violations},
            {"positivity_violations", a.positivity_violations},
            {"tau_zero", a.zero_tau},
            {"tau_one", a.one_tau},
            {"tau_monotone", a.tau_monotone},
            {"branches_disjoint", a.branches_disjoint},
            {"failures", a.failures}};
}

Json to_json(const DimensionReport& d) {
    return {{"estimate", d.estimate}, {"scales_used", d.scales_used}, {"per_scale_counts", d.per_scale_counts}};
}

Json to_json(const DecayFit& d) {
    const char* name = d.decay == Decay::Exponential ? "exponential"
                       : d.decay == Decay::Subexponential ? "subexponential"
                                                          : "unknown";
    return {{"decay", name}, {"lambda", d.lambda}, {"intercept", d.intercept}, {"max_deviation", d.max_deviation},
            {"threshold", d.threshold}};
}

Json to_json(const OmegaOrder& o) { return {{"elements", o.elements}, {"delta_values", o.delta_values}}; }

Json to_json(const DigitWord& w) { return {{"word", w.to_string()}, {"p", w.p}, {"decoded", decode(w)}}; }

Json to_json(const TrendReport& t) {
    Json counts = Json::array();
    for (const auto& [p, c] : t.counts) counts.push_back({{"p", p}, {"count", c}});
    return {{"label", TrendReport::label}, {"verdict", to_string(t.verdict)}, {"counts", counts}};
}

Json to_json(const RvaResult& r) { return {{"accepted", r.accepted}, {"diagnostic", r.diagnostic}}; }

Json to_json(const ModulusTable& m) {
    Json rows = Json::array();
    for (const ModulusRow& r : m.rows) rows.push_back({{"eps", r.eps}, {"delta", r.delta}});
    return {{"grid_points", m.grid_points}, {"collapse", m.collapse}, {"rows", rows}};
}

Rva rva_from_json(const Json& doc) {
    try {
        Rva a;
        a.n = doc.at("n").get<int>();
        a.r = doc.at("r").get<int>();
        a.states = doc.at("states").get<std::vector<std::string>>();
        a.initial = a.state_index(doc.at("initial").get<std::string>());
        for (const Json& t : doc.at("transitions")) {
            const int from = a.state_index(t.at("from").get<std::string>());
            const int to = a.state_index(t.at("to").get<std::string>());
            Rva::Symbol symbol;
            const Json& s = t.at("symbol");
            if (s.is_string()) {
                const std::string text = s.get<std::string>();
                if (text != "*" && text != "⋆") {
                    for (char ch : text) {
                        if (ch < '0' || ch > '9') throw InvalidArgument("bad symbol '" + text + "'");
                        symbol.push_back(ch - '0');
                    }
                }
            } else {
                symbol = s.get<std::vector<int>>();
            }
            const auto [it, inserted] = a.transitions.emplace(std::make_pair(from, symbol), to);
            if (!inserted && it->second != to) throw InvalidArgument("nondeterministic transition");
        }
        for (const Json& scc : doc.at("accepting_sccs")) {
            std::vector<int> members;
            for (const Json& name : scc) members.push_back(a.state_index(name.get<std::string>()));
            a.accepting_sccs.push_back(std::move(members));
        }
        a.validate();
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("automaton document: ") + e.what());
    }
}

std::vector<std::vector<double>> read_numeric_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t start = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        bool ok = true;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            std::string_view cell(line.data() + pos, comma - pos);
            while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
            while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
                ok = false;
                break;
            }
            row.push_back(v);
            pos = comma + 1;
        }
        if (!ok) {
            if (rows.empty() && line_no == 1) continue;
            throw ParseError(start, "non-numeric CSV row " + std::to_string(line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(start, "inconsistent column count on row " + std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(0, "CSV has no numeric rows");
    return rows;
}

}  // namespace tame::cli
