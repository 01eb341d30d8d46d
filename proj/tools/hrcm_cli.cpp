// Command-line front door: simulate | render | diagrams | expansion | estimate | transform.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include "hrcm/asymptotics.hpp"
#include "hrcm/diagrams.hpp"
#include "hrcm/estimator.hpp"
#include "hrcm/svg.hpp"
#include "hrcm/transform.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = ".";
    std::string format = "json";
};

json load_config(const GlobalOpts& g) {
    if (g.config_path.empty()) throw std::invalid_argument("--config is required");
    std::ifstream in(g.config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + g.config_path);
    return json::parse(in);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
    }
}

void write_file(const GlobalOpts& g, const std::string& name, const std::string& content) {
    fs::create_directories(g.out_dir);
    fs::path path = fs::path(g.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

ordered_json embed(const GlobalOpts& g, const json& config, ordered_json result) {
    ordered_json out;
    out["config"] = config;
    out["seed"] = g.seed;
    out["result"] = std::move(result);
    return out;
}

double default_disc_radius(const hrcm::AdjacencySpec& spec) {
    if (const auto* b = std::get_if<hrcm::BooleanDisc>(&spec.family)) return 0.5 * b->L;
    return 0.0;
}

int cmd_simulate(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"model", "lambda", "R", "svg", "disc_radius"}, "simulate");
    hrcm::AdjacencySpec spec = hrcm::spec_from_json(cfg.at("model"));
    double lambda = cfg.at("lambda").get<double>();
    double R = cfg.at("R").get<double>();
    hrcm::Seed seed{g.seed, 0};
    hrcm::PointCloud cloud = hrcm::sample_ppp(spec.d, lambda, R, seed);
    hrcm::Configuration config =
        hrcm::build_graph(cloud, spec, seed.with_stream(1), g.threads);
    write_file(g, "configuration.json",
               embed(g, cfg, hrcm::config_to_json(config)).dump(2) + "\n");
    if (g.format == "csv") {
        write_file(g, "points.csv", hrcm::cloud_to_csv(cloud));
        write_file(g, "edges.csv", hrcm::edges_to_csv(config));
    }
    if (cfg.value("svg", false)) {
        double rho = cfg.value("disc_radius", default_disc_radius(spec));
        write_file(g, "configuration.svg", hrcm::render_configuration_svg(config, rho));
    }
    return 0;
}

int cmd_render(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"input", "disc_radius"}, "render");
    std::ifstream in(cfg.at("input").get<std::string>());
    if (!in) throw std::invalid_argument("render: cannot open input configuration");
    json stored = json::parse(in);
    const json& conf_json = stored.contains("result") ? stored.at("result") : stored;
    hrcm::Configuration config = hrcm::config_from_json(conf_json);
    double rho = cfg.value("disc_radius", default_disc_radius(config.spec));
    write_file(g, "configuration.svg", hrcm::render_configuration_svg(config, rho));
    return 0;
}

int cmd_diagrams(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"model", "C"}, "diagrams");
    hrcm::AdjacencySpec spec = hrcm::spec_from_json(cfg.at("model"));
    double C = cfg.value("C", 2.0);
    hrcm::DiagramReport rep = hrcm::diagram_report(spec, C, g.threads);
    write_file(g, "diagrams.json", embed(g, cfg, hrcm::report_to_json(rep)).dump(2) + "\n");
    std::cout << hrcm::report_to_table(rep);
    return 0;
}

int cmd_expansion(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"model", "d", "L", "amplitude", "spec", "C", "N", "kind"}, "expansion");
    std::string model = cfg.at("model").get<std::string>();
    hrcm::ExpansionReport rep;
    if (model == "boolean") {
        int d = cfg.at("d").get<int>();
        double L = cfg.at("L").get<double>();
        std::string kind = cfg.value("kind", "expected_degree");
        if (kind == "expected_degree")
            rep = hrcm::boolean_expected_degree_expansion(d, L);
        else if (kind == "lambda_c")
            rep = hrcm::boolean_lambda_c_expansion(d, L);
        else
            throw std::invalid_argument("expansion: kind must be expected_degree|lambda_c");
    } else if (model == "heat3") {
        rep = hrcm::heat_expansion(cfg.at("L").get<double>(), cfg.value("amplitude", -1.0));
    } else if (model == "general") {
        hrcm::AdjacencySpec spec = hrcm::spec_from_json(cfg.at("spec"));
        rep = hrcm::general_expansion(spec, cfg.value("C", 2.0), cfg.value("N", 4), g.threads);
    } else {
        throw std::invalid_argument("expansion: model must be boolean|heat3|general");
    }
    write_file(g, "expansion.json", embed(g, cfg, hrcm::expansion_to_json(rep)).dump(2) + "\n");
    std::cout << hrcm::expansion_to_table(rep);
    return 0;
}

int cmd_estimate(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"model", "R_list", "replicas", "lambda_bracket", "bisection_steps"},
               "estimate");
    hrcm::AdjacencySpec spec = hrcm::spec_from_json(cfg.at("model"));
    auto R_list = cfg.at("R_list").get<std::vector<double>>();
    auto replicas = cfg.at("replicas").get<std::uint64_t>();
    auto bracket = cfg.at("lambda_bracket").get<std::vector<double>>();
    if (bracket.size() != 2)
        throw std::invalid_argument("estimate: lambda_bracket must be [lo, hi]");
    int steps = cfg.value("bisection_steps", 10);
    hrcm::Seed seed{g.seed, 0};
    hrcm::LambdaCEstimate est = hrcm::estimate_lambda_c(spec, R_list, replicas,
                                                        {bracket[0], bracket[1]}, seed,
                                                        g.threads, steps);
    double n1 = hrcm::norm_1to1(spec);
    ordered_json out = hrcm::lambda_c_to_json(est);
    out["lambda_hat_times_norm1"] = est.lambda_hat * n1;
    // Comparison against the matching closed-form prediction.
    if (const auto* b = std::get_if<hrcm::BooleanDisc>(&spec.family)) {
        auto exp = hrcm::boolean_expected_degree_expansion(spec.d, b->L);
        out["expansion_expected_degree"] = exp.predicted_expected_degree;
        out["expansion_lambda_c"] = exp.predicted_lambda_c;
    } else if (const auto* h = std::get_if<hrcm::HeatKernel3>(&spec.family)) {
        auto exp = hrcm::heat_expansion(h->L, h->amplitude);
        out["expansion_expected_degree"] = exp.predicted_expected_degree;
        out["expansion_lambda_c"] = exp.predicted_lambda_c;
    }
    write_file(g, "estimate.json", embed(g, cfg, out).dump(2) + "\n");
    write_file(g, "sweep.csv", hrcm::sweep_to_csv(est.per_R_crossings));
    std::cout << "lambda_hat = " << est.lambda_hat << "  (x norm1 = " << est.lambda_hat * n1
              << ")\n";
    return 0;
}

int cmd_transform(const GlobalOpts& g) {
    json cfg = load_config(g);
    check_keys(cfg, {"model", "powers", "s_max", "s_nodes", "nodes"}, "transform");
    hrcm::AdjacencySpec spec = hrcm::spec_from_json(cfg.at("model"));
    int powers = cfg.value("powers", 2);
    if (powers < 1 || powers > 3)
        throw std::invalid_argument("transform: powers must be in 1..3");
    int nodes = cfg.value("nodes", 2048);
    hrcm::RadialFunction f = hrcm::radial_profile(spec, nodes);
    write_file(g, "phi.csv", hrcm::radial_to_csv(f));
    hrcm::RadialFunction p = f;
    for (int k = 2; k <= powers; ++k) {
        p = hrcm::convolve_radial(p, f, g.threads);
        write_file(g, "phi_star" + std::to_string(k) + ".csv", hrcm::radial_to_csv(p));
    }
    if (spec.d == 3) {
        double s_max = cfg.value("s_max", 12.0);
        int s_nodes = cfg.value("s_nodes", 512);
        std::vector<double> s_grid(s_nodes);
        for (int i = 0; i < s_nodes; ++i) s_grid[i] = s_max * i / (s_nodes - 1);
        hrcm::SpectralFunction F = hrcm::sph_transform_d3(f, s_grid);
        std::string csv = "s,value\n";
        char buf[80];
        for (int i = 0; i < s_nodes; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", F.s_grid[i], F.values[i]);
            csv += buf;
        }
        write_file(g, "transform.csv", csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random connection models on hyperbolic space"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--seed", g.seed, "root seed for all randomness");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--format", g.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    int (*handler)(const GlobalOpts&) = nullptr;
    app.add_subcommand("simulate", "sample a cloud and build the graph")
        ->callback([&] { handler = cmd_simulate; });
    app.add_subcommand("render", "draw a stored configuration as SVG")
        ->callback([&] { handler = cmd_render; });
    app.add_subcommand("diagrams", "compute the diagram report")
        ->callback([&] { handler = cmd_diagrams; });
    app.add_subcommand("expansion", "evaluate a critical-intensity expansion")
        ->callback([&] { handler = cmd_expansion; });
    app.add_subcommand("estimate", "Monte Carlo estimate of lambda_c")
        ->callback([&] { handler = cmd_estimate; });
    app.add_subcommand("transform", "profile, convolution and transform tables")
        ->callback([&] { handler = cmd_transform; });

    CLI11_PARSE(app, argc, argv);
    try {
        return handler(g);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
