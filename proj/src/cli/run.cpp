#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "reports.hpp"
#include "tame/cli.hpp"
#include "tame/errors.hpp"

namespace tame::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

Json config_json(const RunConfig& c) {
    return {{"subcommand", c.subcommand},
            {"function_spec", optional_json(c.function_spec)},
            {"input_path", optional_json(c.input_path)},
            {"output_path", optional_json(c.output_path)},
            {"grid_n", c.grid_n},
            {"eps_value", c.eps_value},
            {"eps_deriv", c.eps_deriv},
            {"seed", c.seed},
            {"emit_plot_data", c.emit_plot_data},
            {"k", c.k},
            {"base", c.base},
            {"precision", c.precision},
            {"x", optional_json(c.x)},
            {"trials", c.trials},
            {"n_max", c.n_max},
            {"j_min", c.j_min},
            {"j_max", c.j_max},
            {"second_function", optional_json(c.second_function)},
            {"automaton_path", optional_json(c.automaton_path)},
            {"words", c.words},
            {"p_min", c.p_min},
            {"p_max", c.p_max}};
}

ToleranceConfig tolerances(const RunConfig& c) {
    ToleranceConfig t;
    t.eps_value = c.eps_value;
    t.eps_deriv = c.eps_deriv;
    t.grid_n = c.grid_n;
    t.seed = c.seed;
    t.validate();
    return t;
}

std::optional<FunctionModel> load_function(const RunConfig& c, bool required) {
    if (c.function_spec && c.input_path) throw InvalidArgument("give either --fn or --input, not both");
    if (c.function_spec) return parse_function_spec(*c.function_spec);
    if (c.input_path) return read_grid_csv(read_file(*c.input_path));
    if (required) throw InvalidArgument(c.subcommand + " needs --fn or --input");
    return std::nullopt;
}

std::string samples_csv(const FunctionModel& f, int n) {
    std::string out = "x,value\n";
    for (double x : grid_points(f.domain(), n)) out += format_real(x) + "," + format_real(f.eval(x)) + "\n";
    return out;
}

// Values for the sequence and dimension subcommands: first column(s) of the
// input CSV, or the generator evaluated at 1..n_max.
std::vector<std::vector<double>> load_values(const RunConfig& c) {
    if (c.function_spec && c.input_path) throw InvalidArgument("give either --fn or --input, not both");
    if (c.input_path) return read_numeric_csv(read_file(*c.input_path));
    if (!c.function_spec) throw InvalidArgument(c.subcommand + " needs --fn or --input");
    const FunctionModel gen = parse_function_spec(*c.function_spec);
    std::vector<std::vector<double>> rows;
    for (int i = 1; i <= c.n_max; ++i) rows.push_back({gen.eval(i)});
    return rows;
}

struct Outcome {
    Json result;
    std::string plot;
};

Outcome do_certify(const RunConfig& c, const ToleranceConfig& t, const FunctionModel& f) {
    return {to_json(certify_smoothness(f, f.domain(), c.k, t)), samples_csv(f, c.grid_n)};
}

Outcome do_classify(const RunConfig& c, const ToleranceConfig& t, const FunctionModel& f) {
    Json r = to_json(classify_function(f, f.domain(), t));
    r["midpoint_defect"] = midpoint_affine_defect(f, f.domain(), 64);
    r["uniform_continuity"] = to_json(uniform_continuity_modulus(f, f.domain(), t));
    return {r, samples_csv(f, c.grid_n)};
}

Outcome do_synth(const RunConfig& c, const ToleranceConfig& t, const FunctionModel& f) {
    const NormalizedFunction nf = normalize(f, f.domain(), t);
    const FieldStructure fs = build_field(nf, t);
    Json r = {{"normalized", nf.f.to_string()},
              {"b", nf.b},
              {"provenance", to_json(nf.provenance)},
              {"E_size", fs.E.size()}};
    if (nf.provenance.case_ii) r["note"] = "E has empty interior expected";
    r["axiom_report"] = to_json(verify_field_axioms(fs, c.trials, t));
    std::string plot = "x,value\n";
    for (const auto& [x, v] : fs.tau_table) plot += format_real(x) + "," + format_real(v) + "\n";
    return {r, plot};
}

Outcome do_seqset(const RunConfig& c) {
    std::vector<double> values;
    if (c.input_path && !c.function_spec) {
        for (const auto& row : load_values(c)) values.push_back(row.front());
    }
    const SequenceSet s = c.function_spec ? make_sequence_set(parse_function_spec(*c.function_spec), c.n_max)
                                          : SequenceSet::from_values(values);
    Json r = {{"size", s.values.size()},
              {"strictly_decreasing", s.strictly_decreasing},
              {"decreasing_gaps", s.decreasing_gaps},
              {"truncation_scale", s.truncation_scale()},
              {"decay", to_json(classify_decay(s))},
              {"omega_order", to_json(omega_order(s.values))}};
    std::string plot = "x,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) plot += std::to_string(i + 1) + "," + format_real(s.values[i]) + "\n";
    return {r, plot};
}

Outcome do_dimension(const RunConfig& c) {
    const auto rows = load_values(c);
    const std::size_t cols = rows.front().size();
    PointSet pts;
    if (cols == 1) {
        std::vector<double> xs;
        for (const auto& row : rows) xs.push_back(row[0]);
        pts = PointSet::line(std::move(xs));
    } else if (cols == 2) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& row : rows) xy.emplace_back(row[0], row[1]);
        pts = PointSet::plane(xy);
    } else {
        throw InvalidArgument("point CSV must have one or two columns");
    }
    const ScaleRange scales{c.j_min, c.j_max};
    Json r = {{"points", pts.size()}, {"dim", pts.dim}};
    std::optional<AnalysisError> first_error;
    auto attempt = [&](const char* name, auto&& estimator) {
        try {
            r[name] = to_json(estimator(pts, scales));
        } catch (const ScaleError& e) {
            if (!first_error) first_error = e;
            r[name] = {{"error", e.kind()}, {"detail", e.detail()}};
        }
    };
    attempt("assouad", assouad_estimate);
    attempt("box", box_dimension_estimate);
    if (r["assouad"].contains("error") && r["box"].contains("error")) throw *first_error;
    // One column: index against point. Two columns: the points themselves.
    std::string plot = "x,value\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        plot += cols == 1 ? std::to_string(i) + "," + format_real(rows[i][0])
                          : format_real(rows[i][0]) + "," + format_real(rows[i][1]);
        plot += "\n";
    }
    return {r, plot};
}

Outcome do_encode(const RunConfig& c) {
    Json r = {{"base", c.base}, {"precision", c.precision}};
    if (!c.words.empty()) {
        Json decoded = Json::array();
        for (const std::string& w : c.words) decoded.push_back(to_json(parse_digit_word(w, c.base)));
        r["decoded"] = decoded;
    }
    if (c.x) {
        r["x"] = *c.x;
        Json words = Json::array();
        for (const DigitWord& w : encode(*c.x, c.base, c.precision)) words.push_back(to_json(w));
        r["words"] = words;
    }
    if (!c.x && c.words.empty()) throw InvalidArgument("encode needs --x or --word");
    return {r, ""};
}

Outcome do_recognize(const RunConfig& c) {
    if (c.automaton_path) {
        const Rva a = rva_from_json(Json::parse(read_file(*c.automaton_path)));
        std::vector<DigitWord> words;
        for (const std::string& w : c.words) words.push_back(parse_digit_word(w, a.r));
        Json r = to_json(rva_membership(a, words));
        r["words"] = c.words;
        return {r, ""};
    }
    const auto f = load_function(c, true);
    if (!f->domain().closure().contains(Interval::closed(0.0, 1.0))) {
        throw DomainError("recognize needs a function defined on [0,1]");
    }
    const FunctionModel model = *f;
    const SetModel graph = SetModel::graph([model](double x) { return model.eval_closure(x); });
    NerodeOptions opts;
    opts.seed = c.seed;
    const TrendReport trend = recognizability_trend(graph, c.base, c.p_min, c.p_max, opts);
    std::string plot = "x,value\n";
    for (const auto& [p, n] : trend.counts) plot += std::to_string(p) + "," + std::to_string(n) + "\n";
    return {to_json(trend), plot};
}

Outcome do_identities(const RunConfig& c, const FunctionModel& f) {
    const FunctionModel g = c.second_function ? parse_function_spec(*c.second_function) : f;
    const Interval J = intersect(f.domain(), g.domain());
    if (c.k < 1 || c.k > 16) throw InvalidArgument("--k must be in [1,16] for identities");
    if (c.trials < 1) throw InvalidArgument("--trials must be positive");
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double composition = 0.0;
    double additivity = 0.0;
    for (int t = 0; t < c.trials; ++t) {
        StepVector h;
        for (int i = 0; i < c.k; ++i) h.steps.push_back(J.length() / (2.0 * c.k) * (0.05 + 0.95 * unit(rng)));
        const double span = c.k * h.norm();
        const double lo = J.lo() + 1e-9 * J.length();
        const double x = lo + (J.hi() - span - lo) * 0.999 * unit(rng);
        const IdentityResiduals res = check_diff_identities(f, g, x, h);
        composition = std::max(composition, res.composition);
        additivity = std::max(additivity, res.additivity);
    }
    return {{{"domain", to_json(J)},
             {"k", c.k},
             {"trials", c.trials},
             {"max_composition_residual", composition},
             {"max_additivity_residual", additivity}},
            ""};
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& detail) {
    err << Json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

bool needs_function(const std::string& subcommand) {
    return subcommand == "certify" || subcommand == "classify" || subcommand == "synth-field" ||
           subcommand == "identities";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const ToleranceConfig t = tolerances(cfg);
        if (cfg.emit_plot_data && !cfg.output_path) throw InvalidArgument("--plot needs --output");
        const auto f = needs_function(cfg.subcommand) ? load_function(cfg, true) : std::nullopt;
        Outcome o;
        const std::string& s = cfg.subcommand;
        if (s == "certify") o = do_certify(cfg, t, *f);
        else if (s == "classify") o = do_classify(cfg, t, *f);
        else if (s == "synth-field") o = do_synth(cfg, t, *f);
        else if (s == "seqset") o = do_seqset(cfg);
        else if (s == "dimension") o = do_dimension(cfg);
        else if (s == "encode") o = do_encode(cfg);
        else if (s == "recognize") o = do_recognize(cfg);
        else if (s == "identities") o = do_identities(cfg, *f);
        else throw InvalidArgument("unknown subcommand '" + s + "'");

        const Json report = {{"tool", "tame-analysis"},
                             {"version", kToolVersion},
                             {"config", config_json(cfg)},
                             {"result", o.result}};
        const std::string text = report.dump(2) + "\n";
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path, std::ios::binary);
            if (!file) throw InvalidArgument("cannot write '" + *cfg.output_path + "'");
            file << text;
            if (cfg.emit_plot_data && !o.plot.empty()) {
                std::ofstream plot(*cfg.output_path + ".plot.csv", std::ios::binary);
                if (!plot) throw InvalidArgument("cannot write plot data next to '" + *cfg.output_path + "'");
                plot << o.plot;
            }
        } else {
            out << text;
        }
        return 0;
    } catch (const AnalysisError& e) {
        emit_error(err, e.kind(), e.detail());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        emit_error(err, "InvalidArgument", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, "InternalError", e.what());
        return 3;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Executable analytic criteria for real functions and point sets", "tame-analysis"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1, 1);

    std::string fn, input, output, second, automaton;
    double x = 0.0;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"certify", "smoothness certificate from generalized differences"},
        {"classify", "trichotomy report for a function"},
        {"synth-field", "ordered field synthesized from a non-affine function"},
        {"seqset", "sequence set, decay class and omega-order"},
        {"dimension", "Assouad and box-counting estimates"},
        {"encode", "base-r expansions of a real, or decoding of words"},
        {"recognize", "automaton membership or recognizability trend"},
        {"identities", "difference-operator identity residuals"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--fn", fn, "function spec");
        sub->add_option("--input", input, "input CSV");
        sub->add_option("--output", output, "report path (default stdout)");
        sub->add_option("--grid", cfg.grid_n, "grid size")->capture_default_str();
        sub->add_option("--eps", cfg.eps_value, "value tolerance")->capture_default_str();
        sub->add_option("--eps-deriv", cfg.eps_deriv, "derivative tolerance")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_flag("--plot", cfg.emit_plot_data, "write <output>.plot.csv");
        sub->add_option("--k", cfg.k, "difference / smoothness order")->capture_default_str();
        sub->add_option("--base", cfg.base, "numeration base")->capture_default_str();
        sub->add_option("--precision", cfg.precision, "fractional digits")->capture_default_str();
        sub->add_option("--x", x, "real to encode");
        sub->add_option("--trials", cfg.trials, "random trials")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "sequence length")->capture_default_str();
        sub->add_option("--jmin", cfg.j_min, "coarsest dyadic scale")->capture_default_str();
        sub->add_option("--jmax", cfg.j_max, "finest dyadic scale")->capture_default_str();
        sub->add_option("--g", second, "second function for identities");
        sub->add_option("--automaton", automaton, "automaton JSON");
        sub->add_option("--word", cfg.words, "digit word (repeatable)");
        sub->add_option("--p-min", cfg.p_min, "shortest prefix")->capture_default_str();
        sub->add_option("--p-max", cfg.p_max, "longest prefix")->capture_default_str();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kToolVersion) + "\n" : app.help());
            return 0;
        }
        emit_error(err, "UsageError", e.what());
        return 2;
    }
    CLI::App* chosen = app.get_subcommands().front();
    cfg.subcommand = chosen->get_name();
    if (chosen->count("--fn")) cfg.function_spec = fn;
    if (chosen->count("--input")) cfg.input_path = input;
    if (chosen->count("--output")) cfg.output_path = output;
    if (chosen->count("--x")) cfg.x = x;
    if (chosen->count("--g")) cfg.second_function = second;
    if (chosen->count("--automaton")) cfg.automaton_path = automaton;
    return run(cfg, out, err);
}

}  // namespace tame::cli
