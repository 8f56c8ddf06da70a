#include "toricfs/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "toricfs/fixtures.hpp"
#include "toricfs/json_io.hpp"
#include "toricfs/sections.hpp"

namespace toricfs {

namespace {

using nlohmann::json;

std::shared_ptr<const Fan> resolve_fan(const RunConfig& cfg) {
    if (!cfg.builtin_fan.empty() && !cfg.fan_path.empty())
        throw ToricError("give either --fan or --builtin-fan, not both");
    if (!cfg.builtin_fan.empty()) return std::make_shared<Fan>(Fan::builtin(cfg.builtin_fan));
    if (!cfg.fan_path.empty()) return fan_from_json(load_json_file(cfg.fan_path));
    throw ToricError("a fan is required: --fan file.json or --builtin-fan NAME");
}

bool is_builtin_spec(const std::string& s) {
    return s == "tangent" || s == "cotangent" || s.rfind("line:", 0) == 0 ||
           s.rfind("sum:", 0) == 0;
}

ToricBundle resolve_bundle(const RunConfig& cfg, std::shared_ptr<const Fan> fan,
                           int64_t default_p) {
    if (cfg.bundle_spec.empty()) throw ToricError("a bundle is required: --bundle SPEC");
    if (is_builtin_spec(cfg.bundle_spec)) {
        int64_t p = cfg.p ? cfg.p : default_p;
        if (p == 0) throw ToricError("--p is required for builtin bundle specs");
        return builtin_bundle(std::move(fan), Fq::get(p, cfg.d), cfg.bundle_spec);
    }
    ToricBundle b = bundle_from_json(std::move(fan), load_json_file(cfg.bundle_spec));
    if (cfg.p != 0 && b.field().p() != cfg.p)
        throw ToricError("bundle file field p=" + std::to_string(b.field().p()) +
                         " disagrees with --p " + std::to_string(cfg.p));
    return b;
}

void emit(const json& doc, std::ostream& out, const std::string& path) {
    std::string text = doc.dump(2);
    out << text << "\n";
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw ToricError("cannot write " + path);
        f << text << "\n";
    }
}

SplitReport run_one_criterion(const ToricBundle& b, const std::string& name, int d_max) {
    if (name == "1") return length_criterion_check(b);
    if (name == "2") return pushforward_criterion_check(b, d_max);
    if (name == "A") return transition_criterion_check(b);
    throw ToricError("--criterion must be 1, 2, A or all");
}

int check_split(const RunConfig& cfg, std::ostream& out) {
    if (cfg.p == 0) throw ToricError("--p is required for check-split");
    std::shared_ptr<const Fan> fan = resolve_fan(cfg);
    ToricBundle b = resolve_bundle(cfg, fan, 0);
    json doc;
    doc["schema_version"] = 1;
    Decision overall = Decision::Unknown;
    if (cfg.criterion == "all") {
        json reports = json::array();
        bool any_split = false, any_not = false, any_failed = false;
        for (const char* name : {"1", "A", "2"}) {
            try {
                SplitReport rep = run_one_criterion(b, name, cfg.d_max);
                reports.push_back(rep.to_json());
                if (rep.decision == Decision::Split) any_split = true;
                else if (rep.decision == Decision::NotSplit) any_not = true;
                else any_failed = true;
            } catch (const ToricError& e) {
                json skipped;
                skipped["criterion"] = name;
                skipped["skipped"] = e.what();
                reports.push_back(skipped);
            }
        }
        if (any_split && any_not)
            throw std::logic_error("criteria disagree: simultaneous SPLIT and NOT_SPLIT");
        if (any_split) overall = Decision::Split;
        else if (any_not) overall = Decision::NotSplit;
        else if (any_failed) overall = Decision::CriterionFailed;
        else overall = Decision::Unknown;  // everything was skipped
        doc["decision"] = decision_name(overall);
        doc["criterion"] = "all";
        doc["p"] = b.field().p();
        doc["reports"] = reports;
    } else {
        SplitReport rep = run_one_criterion(b, cfg.criterion, cfg.d_max);
        overall = rep.decision;
        doc.update(rep.to_json());
    }
    emit(doc, out, cfg.out_path);
    return decision_exit_code(overall);
}

int klyachko_info(const RunConfig& cfg, std::ostream& out) {
    std::shared_ptr<const Fan> fan = resolve_fan(cfg);
    ToricBundle b = resolve_bundle(cfg, fan, 2);
    json doc;
    doc["schema_version"] = 1;
    doc["fan"] = fan_to_json(*fan);
    doc["fan"]["smooth"] = fan->is_smooth();
    doc["fan"]["complete"] = fan->is_complete();
    doc["rank"] = b.rank();
    doc["field"] = field_to_json(b.field());
    json rays = json::array();
    for (int a = 0; a < fan->n_rays(); ++a) {
        JumpData jd = jump_data(b, a);
        json rj;
        rj["ray"] = a;
        rj["jumps"] = jd.jumps;
        rj["dims"] = jd.dims;
        rj["n_max"] = jd.n_max;
        rj["n_min"] = jd.n_min;
        rays.push_back(rj);
    }
    doc["rays"] = rays;
    doc["klyachko_length"] = klyachko_length(b);
    emit(doc, out, cfg.out_path);
    return 0;
}

int sections_cmd(const RunConfig& cfg, std::ostream& out) {
    std::shared_ptr<const Fan> fan = resolve_fan(cfg);
    ToricBundle b = resolve_bundle(cfg, fan, 2);
    std::vector<WeightSpace> support = weight_support(b);
    json doc;
    doc["schema_version"] = 1;
    doc["rank"] = b.rank();
    doc["field"] = field_to_json(b.field());
    json chars = json::array();
    int64_t total = 0;
    for (const auto& w : support) {
        json cj;
        cj["chi"] = w.chi;
        cj["dimension"] = w.space.dim();
        total += w.space.dim();
        if (cfg.chart_restrictions) {
            json basis = json::array();
            for (int i = 0; i < w.space.dim(); ++i) {
                FqVec v = w.space.basis().row(i);
                json charts = json::array();
                for (int c = 0; c < fan->n_max_cones(); ++c) {
                    ChartSection cs = chart_restriction(b, w.chi, v, c);
                    json terms = json::array();
                    for (const auto& t : cs.terms) {
                        json tj;
                        tj["eigen_index"] = t.eigen_index;
                        tj["coeff"] = elem_to_json(t.coeff);
                        tj["exponents"] = t.exponents;
                        terms.push_back(tj);
                    }
                    charts.push_back(json{{"cone", c}, {"terms", terms}});
                }
                basis.push_back(json{{"vector", vec_to_json(v)}, {"charts", charts}});
            }
            cj["basis"] = basis;
        }
        chars.push_back(cj);
    }
    doc["characters"] = chars;
    doc["h0"] = total;
    emit(doc, out, cfg.out_path);
    return 0;
}

int cocycle_cmd(const RunConfig& cfg, std::ostream& out) {
    std::shared_ptr<const Fan> fan = resolve_fan(cfg);
    ToricBundle b = resolve_bundle(cfg, fan, 2);
    KaneyamaCocycle kc = kaneyama_from_klyachko(b);
    json doc;
    doc["schema_version"] = 1;
    doc["rank"] = kc.rank;
    doc["field"] = field_to_json(*kc.field);
    doc["holds"] = cocycle_holds(kc);
    doc["characters"] = kc.chars;
    json mats = json::array();
    int nc = fan->n_max_cones();
    for (int s = 0; s < nc; ++s) {
        json row = json::array();
        for (int t = 0; t < nc; ++t) {
            json entries = json::array();
            for (int i = 0; i < kc.rank; ++i) entries.push_back(vec_to_json(kc.P[s][t].row(i)));
            row.push_back(entries);
        }
        mats.push_back(row);
    }
    doc["P"] = mats;
    emit(doc, out, cfg.out_path);
    return doc["holds"].get<bool>() ? 0 : 4;
}

int fixtures_cmd(const RunConfig& cfg, std::ostream& out) {
    int64_t p = cfg.p ? cfg.p : 2;
    const Fq& f = Fq::get(p, cfg.d);
    json doc;
    doc["schema_version"] = 1;
    doc["field"] = field_to_json(f);
    json arr = json::array();
    for (const auto& fx : standard_fixtures(f)) {
        json fj;
        fj["name"] = fx.name;
        fj["rank"] = fx.bundle.rank();
        fj["fan_rank"] = fx.fan->rank();
        fj["klyachko_length"] = klyachko_length(fx.bundle);
        arr.push_back(fj);
    }
    doc["fixtures"] = arr;
    doc["count"] = arr.size();
    emit(doc, out, cfg.out_path);
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "check-split") return check_split(cfg, out);
        if (cfg.command == "klyachko-info") return klyachko_info(cfg, out);
        if (cfg.command == "sections") return sections_cmd(cfg, out);
        if (cfg.command == "cocycle") return cocycle_cmd(cfg, out);
        if (cfg.command == "fixtures") return fixtures_cmd(cfg, out);
        throw ToricError("unknown command: " + cfg.command);
    } catch (const ToricError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Frobenius splitting checks for projectivized toric vector bundles"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fan", cfg.fan_path, "fan JSON file");
        sub->add_option("--builtin-fan", cfg.builtin_fan,
                        "builtin fan: P1, P2, P3, P1xP1, F1, F2, F3, A1, A2");
        sub->add_option("--bundle", cfg.bundle_spec,
                        "tangent | cotangent | line:[..] | sum:[[..],..] | bundle JSON file")
            ->required();
        sub->add_option("--p", cfg.p, "field characteristic (prime)");
        sub->add_option("--d", cfg.d, "field degree (default 1)");
        sub->add_option("--out", cfg.out_path, "also write the JSON document to this file");
    };
    CLI::App* cs = app.add_subcommand("check-split", "decide splitting of the projectivized bundle");
    add_common(cs);
    cs->add_option("--criterion", cfg.criterion, "1 | 2 | A | all (default all)");
    cs->add_option("--dmax", cfg.d_max, "extension degree cap for the factored witness search")
        ->check(CLI::PositiveNumber);
    CLI::App* ki = app.add_subcommand("klyachko-info", "per-ray filtration data and the spread");
    add_common(ki);
    CLI::App* se = app.add_subcommand("sections", "weight spaces of global sections");
    add_common(se);
    se->add_flag("--charts", cfg.chart_restrictions, "include per-cone monomial restrictions");
    CLI::App* co = app.add_subcommand("cocycle", "per-cone transition constants and the cocycle check");
    add_common(co);
    CLI::App* fx = app.add_subcommand("fixtures", "list the named fixture bundles");
    fx->add_option("--p", cfg.p, "field characteristic (default 2)");
    fx->add_option("--d", cfg.d, "field degree (default 1)");
    fx->add_option("--out", cfg.out_path, "also write the JSON document to this file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return run(cfg, std::cout, std::cerr);
}

}  // namespace toricfs
