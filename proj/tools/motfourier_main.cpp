// Command-line front end: script runner plus one subcommand per engine
// operation.  Inputs are JSON files carrying expression text in the script
// grammar; outputs are JSON reports on stdout.
#include <algorithm>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "motfourier/dsl.hpp"
#include "motfourier/engine.hpp"
#include "motfourier/errors.hpp"
#include "motfourier/fourier.hpp"
#include "motfourier/integrate.hpp"
#include "motfourier/newton.hpp"
#include "motfourier/padic.hpp"
#include "motfourier/weil.hpp"

namespace {

using motfourier::CheckReport;
using motfourier::EngineError;
using motfourier::MotFn;
using motfourier::Value;
using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EngineError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Input files carry either {"expr": "<expression>"} or
// {"script": "<definitions>", "name": "<which>"}.
Value load_value(const std::string& path) {
    const ojson j = ojson::parse(read_file(path));
    if (j.contains("expr")) {
        const auto e = motfourier::parse_expression(j.at("expr").get<std::string>());
        return motfourier::eval_expression(e, {});
    }
    if (j.contains("script") && j.contains("name")) {
        const motfourier::Script script =
            motfourier::parse(j.at("script").get<std::string>());
        std::map<std::string, Value> env;
        for (const auto& s : script.statements)
            if (s.kind == motfourier::Statement::Kind::Definition)
                env.insert_or_assign(s.name, motfourier::eval_expression(s.expr, env));
        const std::string name = j.at("name").get<std::string>();
        auto it = env.find(name);
        if (it == env.end()) throw EngineError("no definition of '" + name + "' in " + path);
        return it->second;
    }
    throw EngineError(path + " needs an \"expr\" entry or \"script\" + \"name\" entries");
}

MotFn load_fn(const std::string& path) {
    Value v = load_value(path);
    if (auto* f = std::get_if<MotFn>(&v)) return *f;
    throw EngineError(path + " does not describe a function");
}

motfourier::Dist load_dist(const std::string& path) {
    Value v = load_value(path);
    if (auto* d = std::get_if<motfourier::Dist>(&v)) return *d;
    if (auto* f = std::get_if<MotFn>(&v)) return motfourier::Dist::regular(*f);
    throw EngineError(path + " does not describe a distribution");
}

motfourier::Polyball parse_group(const std::string& text) {
    const auto e = motfourier::parse_expression(text);
    Value v = motfourier::eval_expression(e, {});
    if (auto* b = std::get_if<motfourier::Ball>(&v)) return motfourier::Polyball({*b});
    if (auto* pb = std::get_if<motfourier::Polyball>(&v)) return *pb;
    throw EngineError("'" + text + "' is not a ball or a product of balls");
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

ojson report_json(const CheckReport& rep) {
    ojson obj;
    obj["identity"] = rep.identity;
    obj["lhs"] = rep.lhs;
    obj["rhs"] = rep.rhs;
    obj["status"] = rep.status();
    return obj;
}

int check_exit(bool pass) { return pass ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motfourier: exact integration and Fourier analysis over a "
                 "computable valued field"};
    app.set_version_flag("--version", "0.1.0");
    app.require_subcommand(1);
    int exit_code = 0;

    // ------------------------------------------------------------- integrate
    auto* integrate_cmd =
        app.add_subcommand("integrate", "Integrate a function over all coordinates");
    std::string integrate_input;
    std::string integrate_order;
    bool integrate_with_form = false;
    integrate_cmd->add_option("input", integrate_input, "function JSON file")->required();
    integrate_cmd->add_option("--order", integrate_order,
                              "coordinate order, e.g. 2,1 (default ascending)");
    integrate_cmd->add_flag("--with-form", integrate_with_form,
                            "carry the input volume form through to the report");
    integrate_cmd->callback([&] {
        const MotFn f = load_fn(integrate_input);
        std::vector<int> order(f.arity());
        for (int k = 0; k < f.arity(); ++k) order[k] = k;
        if (!integrate_order.empty()) {
            order.clear();
            std::istringstream in(integrate_order);
            std::string item;
            while (std::getline(in, item, ','))
                order.push_back(std::stoi(item) - 1);  // 1-based on the command line
        }
        const motfourier::CElem value = motfourier::integrate(f, order);
        ojson obj;
        obj["command"] = "integrate";
        obj["value"] = value.to_string();
        if (integrate_with_form) obj["form"] = "mu";
        emit(obj);
    });

    // --------------------------------------------------------------- fourier
    auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of a function");
    std::string fourier_input;
    fourier_cmd->add_option("input", fourier_input, "function JSON file")->required();
    fourier_cmd->callback([&] {
        const MotFn f = load_fn(fourier_input);
        ojson obj;
        obj["command"] = "fourier";
        obj["result"] = motfourier::fourier0(f).to_string();
        emit(obj);
    });

    // -------------------------------------------------------------- convolve
    auto* convolve_cmd = app.add_subcommand("convolve", "Convolution of two functions");
    std::string convolve_a, convolve_b;
    convolve_cmd->add_option("first", convolve_a, "function JSON file")->required();
    convolve_cmd->add_option("second", convolve_b, "function JSON file")->required();
    convolve_cmd->callback([&] {
        const MotFn h = motfourier::convolve(load_fn(convolve_a), load_fn(convolve_b));
        ojson obj;
        obj["command"] = "convolve";
        obj["result"] = h.to_string();
        emit(obj);
    });

    // ---------------------------------------------------------------- verify
    auto* verify_cmd =
        app.add_subcommand("verify", "Check a transform identity on concrete functions");
    std::string verify_kind, verify_input, verify_with, verify_subgroup;
    verify_cmd
        ->add_option("identity", verify_kind,
                     "inversion, plancherel, poisson, or convolution")
        ->required()
        ->check(CLI::IsMember({"inversion", "plancherel", "poisson", "convolution"}));
    verify_cmd->add_option("--input", verify_input, "function JSON file")->required();
    verify_cmd->add_option("--with", verify_with, "second function JSON file");
    verify_cmd->add_option("--subgroup", verify_subgroup,
                           "subgroup as a ball product expression");
    verify_cmd->callback([&] {
        const MotFn f = load_fn(verify_input);
        motfourier::FourierConfig cfg;
        if (!verify_subgroup.empty())
            cfg = motfourier::FourierConfig::over(parse_group(verify_subgroup));
        CheckReport rep;
        if (verify_kind == "inversion") {
            rep = motfourier::check_inversion(f, cfg);
        } else if (verify_kind == "poisson") {
            if (verify_subgroup.empty())
                throw EngineError("verify poisson needs --subgroup");
            rep = motfourier::check_poisson(f, *cfg.subgroup);
        } else {
            if (verify_with.empty())
                throw EngineError("verify " + verify_kind + " needs --with");
            const MotFn g = load_fn(verify_with);
            rep = verify_kind == "convolution" ? motfourier::check_convolution(f, g, cfg)
                                               : motfourier::check_plancherel(f, g, cfg);
        }
        emit(report_json(rep));
        exit_code = check_exit(rep.pass);
    });

    // ------------------------------------------------------------- dist-eval
    auto* dist_eval_cmd =
        app.add_subcommand("dist-eval", "Evaluate a distribution's level function");
    std::string de_input, de_at, de_gamma = "0";
    dist_eval_cmd->add_option("--input", de_input, "distribution JSON file")->required();
    dist_eval_cmd->add_option("--at", de_at, "evaluation point, e.g. \"t^-1, 1\"")
        ->required();
    dist_eval_cmd->add_option("--gamma", de_gamma, "level exponent (rational)");
    dist_eval_cmd->callback([&] {
        const motfourier::Dist d = load_dist(de_input);
        const auto point = motfourier::parse_point(de_at);
        const auto gamma_pt = motfourier::parse_point(de_gamma);
        if (gamma_pt.size() != 1 || !gamma_pt[0].is_constant() ||
            !gamma_pt[0].constant_value().is_rational())
            throw EngineError("--gamma takes a rational number");
        const motfourier::Rat gamma = gamma_pt[0].constant_value().re();
        const motfourier::CElem value = motfourier::dist_eval(d, point, gamma);
        ojson obj;
        obj["command"] = "dist-eval";
        obj["gamma"] = gamma.get_str();
        obj["value"] = value.to_string();
        emit(obj);
    });

    // ------------------------------------------------------------ dist-apply
    auto* dist_apply_cmd =
        app.add_subcommand("dist-apply", "Pair a distribution with a test function");
    std::string da_input, da_test;
    dist_apply_cmd->add_option("--input", da_input, "distribution JSON file")->required();
    dist_apply_cmd->add_option("--test", da_test, "test function JSON file")->required();
    dist_apply_cmd->callback([&] {
        const motfourier::CElem value =
            motfourier::dist_apply(load_dist(da_input), load_fn(da_test));
        ojson obj;
        obj["command"] = "dist-apply";
        obj["value"] = value.to_string();
        emit(obj);
    });

    // ----------------------------------------------------------- dist-verify
    auto* dist_verify_cmd = app.add_subcommand(
        "dist-verify", "Check the transform exchange identity on a distribution");
    std::string dv_input, dv_test;
    dist_verify_cmd->add_option("--input", dv_input, "distribution JSON file")->required();
    dist_verify_cmd->add_option("--test", dv_test, "test function JSON file")->required();
    dist_verify_cmd->callback([&] {
        const CheckReport rep =
            motfourier::check_dist_fourier(load_dist(dv_input), load_fn(dv_test));
        emit(report_json(rep));
        exit_code = check_exit(rep.pass);
    });

    // ------------------------------------------------------------------ weil
    auto* weil_cmd =
        app.add_subcommand("weil", "Apply a group word to a function with a form");
    std::string weil_word, weil_input, weil_form;
    weil_cmd->add_option("--word", weil_word, "e.g. \"w,u(t),s(t^-1)\"")->required();
    weil_cmd->add_option("--input", weil_input, "function JSON file")->required();
    weil_cmd->add_option("--form", weil_form, "volume form coefficient (default 1)");
    weil_cmd->callback([&] {
        const MotFn f = load_fn(weil_input);
        motfourier::RvElem form = motfourier::RvElem::one();
        if (!weil_form.empty()) {
            const auto pt = motfourier::parse_point(weil_form);
            if (pt.size() != 1) throw EngineError("--form takes one field element");
            form = motfourier::rv(pt[0]);
        }
        const motfourier::MuFn out = motfourier::weil_apply(
            motfourier::parse_sl2_word(weil_word), motfourier::MuFn(f, form));
        ojson obj;
        obj["command"] = "weil";
        obj["word"] = weil_word;
        obj["result"] = motfourier::mu_to_string(out);
        emit(obj);
    });

    // ----------------------------------------------------------- weil-verify
    auto* weil_verify_cmd = app.add_subcommand(
        "weil-verify", "Check the generator relations over a corpus directory");
    std::string wv_corpus, wv_params = "t^-2, t^-1, 1, t, t^2, i, i*t, i*t^-1";
    weil_verify_cmd->add_option("--corpus", wv_corpus, "directory of function JSON files")
        ->required();
    weil_verify_cmd->add_option("--params", wv_params, "comma-separated parameter list");
    weil_verify_cmd->callback([&] {
        std::vector<motfourier::MuFn> corpus;
        std::vector<std::string> names;
        for (const auto& entry : std::filesystem::directory_iterator(wv_corpus))
            if (entry.path().extension() == ".json") names.push_back(entry.path().string());
        std::sort(names.begin(), names.end());
        for (const auto& name : names)
            corpus.emplace_back(load_fn(name), motfourier::RvElem::one());
        if (corpus.empty()) throw EngineError("no .json functions in " + wv_corpus);
        const auto params = motfourier::parse_point(wv_params);
        const auto reports = motfourier::verify_relations(corpus, params);
        ojson arr = ojson::array();
        bool all = true;
        for (const auto& rep : reports) {
            arr.push_back(report_json(rep));
            all = all && rep.pass;
        }
        emit(arr);
        exit_code = check_exit(all);
    });

    // ------------------------------------------------------------- limit-set
    auto* limit_cmd =
        app.add_subcommand("limit-set", "Limit values of the branches of a plane curve");
    std::string limit_poly;
    limit_cmd->add_option("polynomial", limit_poly, "e.g. \"x*y - 1\"")->required();
    limit_cmd->callback([&] {
        const auto r = motfourier::limit_set(motfourier::parse_polynomial(limit_poly, 2));
        ojson obj;
        obj["command"] = "limit-set";
        obj["polynomial"] = limit_poly;
        obj["result"] = r.to_string();
        emit(obj);
    });

    // -------------------------------------------------------------- jacobian
    auto* jacobian_cmd =
        app.add_subcommand("jacobian", "Determinant of a polynomial map's derivative");
    std::string jac_map, jac_at;
    jacobian_cmd->add_option("map", jac_map, "comma-separated components, e.g. \"t*x, y\"")
        ->required();
    jacobian_cmd->add_option("--at", jac_at, "evaluation point")->required();
    jacobian_cmd->callback([&] {
        std::vector<std::string> parts;
        std::istringstream in(jac_map);
        std::string item;
        while (std::getline(in, item, ',')) parts.push_back(item);
        const int n = static_cast<int>(parts.size());
        std::vector<motfourier::VfPoly> map;
        map.reserve(parts.size());
        for (const auto& part : parts)
            map.push_back(motfourier::parse_polynomial(part, n));
        const auto point = motfourier::parse_point(jac_at);
        const motfourier::VfElem det = motfourier::jacobian(map, point);
        ojson obj;
        obj["command"] = "jacobian";
        obj["at"] = jac_at;
        obj["value"] = det.to_string();
        emit(obj);
    });

    // ---------------------------------------------------------------- oracle
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Compare the symbolic integral against a prime-specialized sum");
    std::string oracle_input;
    long oracle_p = 5;
    int oracle_level = 3;
    oracle_cmd->add_option("--input", oracle_input, "function JSON file")->required();
    oracle_cmd->add_option("--p", oracle_p, "prime congruent to 1 mod 4");
    oracle_cmd->add_option("--level", oracle_level, "congruence level");
    oracle_cmd->callback([&] {
        const MotFn f = load_fn(oracle_input);
        const motfourier::PadicConfig cfg(oracle_p, oracle_level);
        const motfourier::CElem symbolic = motfourier::integrate(f);
        const motfourier::Cyclo lhs = motfourier::spec_c(symbolic, cfg);
        const motfourier::Cyclo rhs = motfourier::numeric_integral(f, cfg);
        const std::complex<double> delta = lhs.to_complex() - rhs.to_complex();
        ojson obj;
        obj["symbolic"] = lhs.to_string();
        obj["numeric"] = rhs.to_string();
        obj["abs_error"] = std::abs(delta);
        obj["status"] = (lhs == rhs) ? "pass" : "fail";
        emit(obj);
        exit_code = check_exit(lhs == rhs);
    });

    // ------------------------------------------------------------------- run
    auto* run_cmd = app.add_subcommand("run", "Execute a script file");
    std::string run_script_path, run_json_out;
    long run_p = 5;
    int run_level = 3;
    run_cmd->add_option("script", run_script_path, "script file")->required();
    run_cmd->add_option("--json", run_json_out, "write the JSON report to this file");
    run_cmd->add_option("--p", run_p, "prime for oracle commands");
    run_cmd->add_option("--level", run_level, "congruence level for oracle commands");
    run_cmd->callback([&] {
        const motfourier::Script script = motfourier::parse(read_file(run_script_path));
        motfourier::RunOptions options;
        options.p = run_p;
        options.level = run_level;
        const motfourier::RunResult result = motfourier::run_script(script, options);
        std::cout << result.summary;
        if (!run_json_out.empty()) {
            std::ofstream out(run_json_out, std::ios::binary);
            if (!out) throw EngineError("cannot write " + run_json_out);
            out << result.json;
        }
        exit_code = result.exit_code;
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const EngineError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return exit_code;
}
