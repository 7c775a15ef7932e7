// idem: exact max-min / max-plus measure algebra on finite spaces.
//
// Results go to stdout as JSON; notices and errors go to stderr.
// Exit codes: 0 success, 1 domain or input error, 2 law-suite failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "idem/cone.hpp"
#include "idem/convexity.hpp"
#include "idem/functorial.hpp"
#include "idem/json_io.hpp"
#include "idem/monad.hpp"
#include "idem/sampling.hpp"

namespace {

using idem::io::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) idem::raise(idem::errc::parse_error, "cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json load(const std::string& path) { return idem::io::parse_text(read_file(path)); }

/// Doubles print with 12 significant digits.
json approx(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return json(std::strtod(buf, nullptr));
}

json approx(const idem::ext_scalar& v) {
    if (!v.is_finite()) return json(v.to_string());
    return approx(v.to_double());
}

void emit(const json& result) { std::cout << result.dump(2) << "\n"; }

idem::rat parse_tolerance(const std::string& text) {
    try {
        return idem::rat::parse(text);
    } catch (const idem::error&) {
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end == nullptr || *end != '\0' || v < 0.0)
            idem::raise(idem::errc::schema_error, "malformed tolerance '" + text + "'");
        return idem::rat::from_double(v);
    }
}

const idem::xi_map& xi_by_name(const std::string& name) {
    if (name == "logit") return idem::xi_map::logit();
    idem::raise(idem::errc::schema_error, "unknown xi map '" + name + "' (available: logit)");
}

idem::order_bijection alpha_by_name(const std::string& name) {
    if (name == "logit-exp") return idem::order_bijection::logit_exp();
    idem::raise(idem::errc::schema_error, "unknown alpha '" + name + "' (available: logit-exp)");
}

json law_report_to_json(const idem::law_report& report) {
    json failures = json::array();
    for (const auto& f : report.failures)
        failures.push_back(json{{"law", f.law}, {"instance", f.detail}});
    return json{{"checked", report.cases}, {"failures", std::move(failures)}, {"ok", report.ok()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact algebra of max-min and max-plus measures on finite spaces"};
    app.require_subcommand(1);

    std::string xi_name = "logit";
    std::string tolerance_text = "1/1000000000";
    std::string oracle_step_text = "1/1000";
    app.add_option("--xi", xi_name, "cone homeomorphism (default: logit)");
    app.add_option("--tolerance", tolerance_text,
                   "float-boundary comparison tolerance (default 1e-9)");
    auto* oracle_step_opt = app.add_option(
        "--oracle-step", oracle_step_text, "grid step for the Hausdorff oracle (default 1/1000)");

    std::string measure_path, function_path, map_path, left_path, right_path, metric_path;
    std::string section_path, generators_path, point_path;
    std::string kind_text = "max-min", alpha_name = "logit-exp";
    std::size_t cases = 100;
    std::uint64_t seed = 0;

    auto* cmd_eval = app.add_subcommand("eval", "integrate a function against a measure");
    cmd_eval->add_option("--measure", measure_path)->required();
    cmd_eval->add_option("--function", function_path)->required();

    auto* cmd_push = app.add_subcommand("push", "pushforward of a measure along a map");
    cmd_push->add_option("--map", map_path)->required();
    cmd_push->add_option("--measure", measure_path)->required();

    auto* cmd_tensor = app.add_subcommand("tensor", "tensor product of two measures");
    cmd_tensor->add_option("--left", left_path)->required();
    cmd_tensor->add_option("--right", right_path)->required();

    auto* cmd_convert =
        app.add_subcommand("convert", "convert between max-min and max-plus along xi");
    cmd_convert->add_option("--measure", measure_path)->required();

    auto* cmd_dist = app.add_subcommand("dist", "metrized distance between two max-min measures");
    cmd_dist->add_option("--left", left_path)->required();
    cmd_dist->add_option("--right", right_path)->required();
    cmd_dist->add_option("--metric", metric_path)->required();

    auto* cmd_mul = app.add_subcommand("mul", "flatten a measure of measures");
    cmd_mul->add_option("--measure", measure_path)->required();

    auto* cmd_laws = app.add_subcommand("laws", "seeded monad-law suite");
    cmd_laws->add_option("--kind", kind_text, "max-min or max-plus");
    cmd_laws->add_option("--cases", cases, "sampled instances per law (default 100)");
    cmd_laws->add_option("--seed", seed, "64-bit seed (default 0)");

    auto* cmd_counter = app.add_subcommand(
        "counterexample", "the three-point witness separating the two monads");
    cmd_counter->add_option("--alpha", alpha_name, "order bijection (default logit-exp)");

    auto* cmd_bary = app.add_subcommand("barycenter", "barycenter of a measure on tuple points");
    cmd_bary->add_option("--measure", measure_path)->required();

    auto* cmd_hull = app.add_subcommand("hull", "max-min convex hull membership");
    cmd_hull->add_option("--generators", generators_path)->required();
    cmd_hull->add_option("--point", point_path)->required();

    auto* cmd_lift = app.add_subcommand("lift", "lift a measure through a section");
    cmd_lift->add_option("--section", section_path)->required();
    cmd_lift->add_option("--measure", measure_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto& xi = xi_by_name(xi_name);
        const idem::rat tolerance = parse_tolerance(tolerance_text);

        if (cmd_eval->parsed()) {
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            auto f = idem::io::function_from_json(load(function_path), "$");
            idem::rat value = std::visit([&](const auto& mm) { return idem::eval(mm, f); }, m);
            emit(json{{"value", idem::io::rat_to_json(value)}});
            return 0;
        }

        if (cmd_push->parsed()) {
            auto f = idem::io::map_from_json(load(map_path), "$");
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            auto pushed = std::visit(
                [&](const auto& mm) { return idem::io::measure_to_json(idem::pushforward(f, mm)); },
                m);
            emit(pushed);
            return 0;
        }

        if (cmd_tensor->parsed()) {
            auto l = idem::io::measure_from_json(load(left_path), "$", &std::cerr);
            auto r = idem::io::measure_from_json(load(right_path), "$", &std::cerr);
            if (l.index() != r.index())
                idem::raise(idem::errc::kind_mismatch, "tensor needs measures of one kind");
            json out;
            if (auto* lm = std::get_if<idem::max_min_measure>(&l))
                out = idem::io::measure_to_json(
                    idem::tensor(*lm, std::get<idem::max_min_measure>(r)));
            else
                out = idem::io::measure_to_json(idem::tensor(
                    std::get<idem::max_plus_measure>(l), std::get<idem::max_plus_measure>(r)));
            emit(out);
            return 0;
        }

        if (cmd_convert->parsed()) {
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            json out;
            if (auto* mp = std::get_if<idem::max_plus_measure>(&m))
                out = idem::io::measure_to_json(idem::k(*mp, xi));
            else
                out = idem::io::measure_to_json(idem::k_inv(std::get<idem::max_min_measure>(m), xi));
            emit(out);
            return 0;
        }

        if (cmd_dist->parsed()) {
            auto l = idem::io::measure_from_json(load(left_path), "$", &std::cerr);
            auto r = idem::io::measure_from_json(load(right_path), "$", &std::cerr);
            auto* lm = std::get_if<idem::max_min_measure>(&l);
            auto* rm = std::get_if<idem::max_min_measure>(&r);
            if (lm == nullptr || rm == nullptr)
                idem::raise(idem::errc::kind_mismatch,
                            "dist expects max-min measures; use convert first");
            auto metric = idem::io::metric_from_json(load(metric_path), lm->space(), "$");
            idem::rat d = idem::measure_dist(*lm, *rm, metric, xi);
            json out{{"distance", idem::io::rat_to_json(d)}, {"approx", approx(d.to_double())}};
            if (oracle_step_opt->count() > 0) {
                idem::rat step = idem::rat::parse(oracle_step_text);
                idem::rat got = idem::hausdorff_oracle(idem::h_inv(*lm, metric, xi),
                                                       idem::h_inv(*rm, metric, xi), step);
                idem::rat gap = idem::rat::abs(got - d);
                out["oracle"] = idem::io::rat_to_json(got);
                out["oracle_step"] = idem::io::rat_to_json(step);
                out["oracle_gap"] = idem::io::rat_to_json(gap);
                out["oracle_agrees"] = gap <= step + step;
            }
            emit(out);
            return 0;
        }

        if (cmd_mul->parsed()) {
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            auto flat = std::visit(
                [&](const auto& mm) { return idem::io::measure_to_json(idem::flatten(mm)); }, m);
            emit(flat);
            return 0;
        }

        if (cmd_laws->parsed()) {
            idem::measure_kind kind;
            if (kind_text == "max-min")
                kind = idem::measure_kind::max_min;
            else if (kind_text == "max-plus")
                kind = idem::measure_kind::max_plus;
            else
                idem::raise(idem::errc::schema_error,
                            "unknown kind '" + kind_text + "' (max-min or max-plus)");
            auto base = idem::finite_space::make_atoms({"a", "b", "c"});
            auto report = idem::check_monad_laws(kind, base, cases, seed);
            json out{{"kind", kind_text},
                     {"cases", cases},
                     {"seed", seed}};
            out.update(law_report_to_json(report));
            emit(out);
            return report.ok() ? 0 : 2;
        }

        if (cmd_counter->parsed()) {
            auto alpha = alpha_by_name(alpha_name);
            auto result = idem::monad_isomorphism_counterexample(alpha, tolerance);
            json differing = json::array();
            for (const auto& l : result.differing) differing.push_back(idem::io::label_to_json(l));
            json lhs_approx = json::object(), rhs_approx = json::object();
            for (std::size_t i = 0; i < result.lhs.space().size(); ++i) {
                const auto& name = result.lhs.space().point(i).atom();
                lhs_approx[name] = approx(result.lhs.weight_at(i));
                rhs_approx[name] = approx(result.rhs.weight_at(i));
            }
            emit(json{{"alpha", alpha.name},
                      {"lhs", idem::io::measure_to_json(result.lhs)},
                      {"rhs", idem::io::measure_to_json(result.rhs)},
                      {"lhs_approx", std::move(lhs_approx)},
                      {"rhs_approx", std::move(rhs_approx)},
                      {"equal", result.equal},
                      {"differing", std::move(differing)}});
            return result.equal ? 2 : 0;
        }

        if (cmd_bary->parsed()) {
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            auto* mm = std::get_if<idem::max_min_measure>(&m);
            if (mm == nullptr)
                idem::raise(idem::errc::kind_mismatch, "barycenter expects a max-min measure");
            emit(idem::io::point_to_json(idem::barycenter(*mm)));
            return 0;
        }

        if (cmd_hull->parsed()) {
            auto gens_json = load(generators_path);
            if (!gens_json.is_array())
                idem::raise(idem::errc::schema_error, "$: generators file must be a JSON array");
            std::vector<idem::coord_point> gens;
            for (std::size_t i = 0; i < gens_json.size(); ++i)
                gens.push_back(
                    idem::io::point_from_json(gens_json[i], "$[" + std::to_string(i) + "]"));
            auto p = idem::io::point_from_json(load(point_path), "$");
            auto result = idem::hull_member(gens, p);
            json out{{"member", result.member}};
            if (result.member) {
                json witness = json::array();
                for (const auto& c : result.coefficients)
                    witness.push_back(idem::io::scalar_to_json(c));
                out["witness"] = std::move(witness);
            }
            emit(out);
            return 0;
        }

        if (cmd_lift->parsed()) {
            auto s = idem::io::section_from_json(load(section_path), "$");
            auto m = idem::io::measure_from_json(load(measure_path), "$", &std::cerr);
            auto* mm = std::get_if<idem::max_min_measure>(&m);
            if (mm == nullptr)
                idem::raise(idem::errc::kind_mismatch, "lift expects a max-min measure");
            emit(idem::io::measure_to_json(idem::section_lift(*mm, s)));
            return 0;
        }
    } catch (const idem::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
