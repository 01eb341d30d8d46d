#include "hrcm/asymptotics.hpp"
#include "hrcm/diagrams.hpp"
#include "hrcm/estimator.hpp"
#include "hrcm/svg.hpp"
#include "hrcm/transform.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hrcm;

namespace {

AdjacencySpec spec_from_str(const std::string& text) {
    return spec_from_json(nlohmann::json::parse(text));
}

py::object json_loads(const std::string& text) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "random connection models on hyperbolic space";

    py::class_<HPoint>(m, "HPoint")
        .def(py::init([](std::vector<double> coords) { return HPoint{std::move(coords)}; }))
        .def_readonly("coords", &HPoint::coords)
        .def("__repr__", [](const HPoint& p) {
            std::string s = "HPoint([";
            for (std::size_t i = 0; i < p.coords.size(); ++i)
                s += (i ? ", " : "") + std::to_string(p.coords[i]);
            return s + "])";
        });

    py::class_<Seed>(m, "Seed")
        .def(py::init([](std::uint64_t root, std::uint64_t stream) {
                 return Seed{root, stream};
             }),
             py::arg("root") = 0, py::arg("stream") = 0)
        .def_readwrite("root", &Seed::root)
        .def_readwrite("stream", &Seed::stream);

    // geometry
    m.def("origin", &origin, py::arg("d"));
    m.def("dist", &dist, py::arg("x"), py::arg("y"));
    m.def("sphere_constant", &sphere_constant, py::arg("d"));
    m.def("ball_volume", &ball_volume, py::arg("d"), py::arg("r"));
    m.def("horocycle_coordinate", &horocycle_coordinate, py::arg("x"), py::arg("b"));
    m.def(
        "lens_geometry",
        [](int d, double L, double r) {
            LensGeometry g = lens_geometry(d, L, r);
            return py::make_tuple(g.alpha, g.a, g.empty);
        },
        py::arg("d"), py::arg("L"), py::arg("r"), "returns (alpha, a, empty)");
    m.def(
        "ball_intersection_volume",
        [](int d, double L, double r) { return ball_intersection_volume(d, L, r); }, py::arg("d"),
        py::arg("L"), py::arg("r"));
    m.def(
        "triangle_checks",
        [](double a, double b, double c) {
            TriangleReport t = triangle_checks(a, b, c);
            py::dict out;
            out["alpha"] = t.alpha;
            out["beta"] = t.beta;
            out["gamma"] = t.gamma;
            out["sine_residual"] = t.sine_residual;
            out["cosine_residual"] = t.cosine_residual;
            out["right_angle_residual"] = t.right_angle_residual;
            out["area_defect"] = t.area_defect;
            out["area_residual"] = t.area_residual;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"));

    // models
    py::class_<AdjacencySpec>(m, "AdjacencySpec")
        .def_static("from_json", &spec_from_str, py::arg("text"))
        .def_readonly("d", &AdjacencySpec::d)
        .def("to_json", [](const AdjacencySpec& s) { return spec_to_json(s).dump(); });
    m.def("boolean_spec", &boolean_spec, py::arg("d"), py::arg("L"));
    m.def("heat_spec", &heat_spec, py::arg("L"), py::arg("amplitude") = -1.0);
    m.def("default_heat_amplitude", &default_heat_amplitude, py::arg("L"));
    m.def("phi", &phi, py::arg("spec"), py::arg("r"));
    m.def("effective_range", &effective_range, py::arg("spec"), py::arg("eps"));
    m.def("norm_1to1", &norm_1to1, py::arg("spec"));
    m.def("norm_2to2", &norm_2to2, py::arg("spec"));

    // transform
    m.def("q_function", &q_function, py::arg("d"), py::arg("r"));
    m.def(
        "loop_value",
        [](const AdjacencySpec& spec, int n, int threads) {
            return loop_value(radial_profile(spec), n, threads);
        },
        py::arg("spec"), py::arg("n"), py::arg("threads") = 0);

    // diagrams
    m.def(
        "diagram_report",
        [](const AdjacencySpec& spec, double C, int threads) {
            return json_loads(report_to_json(diagram_report(spec, C, threads)).dump());
        },
        py::arg("spec"), py::arg("C") = 2.0, py::arg("threads") = 0);
    m.def("mixed_diagram",
          py::overload_cast<const AdjacencySpec&, int, int, int, int>(&mixed_diagram),
          py::arg("spec"), py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("threads") = 0);

    // asymptotics
    m.def(
        "boolean_expected_degree_expansion",
        [](int d, double L) {
            return json_loads(expansion_to_json(boolean_expected_degree_expansion(d, L)).dump());
        },
        py::arg("d"), py::arg("L"));
    m.def(
        "boolean_lambda_c_expansion",
        [](int d, double L) {
            return json_loads(expansion_to_json(boolean_lambda_c_expansion(d, L)).dump());
        },
        py::arg("d"), py::arg("L"));
    m.def(
        "heat_expansion",
        [](double L, double A) {
            return json_loads(expansion_to_json(heat_expansion(L, A)).dump());
        },
        py::arg("L"), py::arg("amplitude") = -1.0);
    m.def(
        "general_expansion",
        [](const AdjacencySpec& spec, double C, int N, int threads) {
            return json_loads(expansion_to_json(general_expansion(spec, C, N, threads)).dump());
        },
        py::arg("spec"), py::arg("C") = 2.0, py::arg("N") = 4, py::arg("threads") = 0);

    // sampler / rcm
    py::class_<PointCloud>(m, "PointCloud")
        .def_readonly("d", &PointCloud::d)
        .def_readonly("R", &PointCloud::R)
        .def_readonly("palm_indices", &PointCloud::palm_indices)
        .def("__len__", [](const PointCloud& c) { return c.points.size(); })
        .def("coords",
             [](const PointCloud& c) {
                 std::vector<std::vector<double>> out;
                 out.reserve(c.points.size());
                 for (const auto& p : c.points) out.push_back(p.coords);
                 return out;
             })
        .def("to_json", [](const PointCloud& c) { return cloud_to_json(c).dump(); });
    m.def(
        "sample_ppp",
        [](int d, double lambda, double R, const Seed& seed) {
            return sample_ppp(d, lambda, R, seed);
        },
        py::arg("d"), py::arg("lambda_"), py::arg("R"), py::arg("seed"));
    m.def("add_palm", &add_palm, py::arg("cloud"), py::arg("points"));

    py::class_<Configuration>(m, "Configuration")
        .def_readonly("edges", &Configuration::edges)
        .def("to_json", [](const Configuration& c) { return config_to_json(c).dump(); });
    m.def("build_graph", &build_graph, py::arg("cloud"), py::arg("spec"), py::arg("seed"),
          py::arg("threads") = 0);
    m.def(
        "clusters",
        [](const Configuration& c) {
            ClusterLabels l = clusters(c);
            return py::make_tuple(l.label, l.sizes);
        },
        py::arg("config"), "returns (labels, sizes)");
    m.def(
        "origin_cluster_reaches",
        [](const Configuration& c, double shell) {
            return origin_cluster_reaches(c, clusters(c), shell);
        },
        py::arg("config"), py::arg("shell"));
    m.def("degree_of", &degree_of, py::arg("config"), py::arg("index"));
    m.def("render_configuration_svg", &render_configuration_svg, py::arg("config"),
          py::arg("vertex_disc_radius"));

    // estimator
    m.def(
        "mecke_degree_check",
        [](const AdjacencySpec& spec, double lambda, double R, std::uint64_t replicas,
           const Seed& seed, int threads) {
            return json_loads(
                mc_to_json(mecke_degree_check(spec, lambda, R, replicas, seed, threads)).dump());
        },
        py::arg("spec"), py::arg("lambda_"), py::arg("R"), py::arg("replicas"), py::arg("seed"),
        py::arg("threads") = 0);
    m.def(
        "crossing_probability",
        [](const AdjacencySpec& spec, double lambda, double R, double shell_margin,
           std::uint64_t replicas, const Seed& seed, int threads) {
            return json_loads(mc_to_json(crossing_probability(spec, lambda, R, shell_margin,
                                                              replicas, seed, threads))
                                  .dump());
        },
        py::arg("spec"), py::arg("lambda_"), py::arg("R"), py::arg("shell_margin"),
        py::arg("replicas"), py::arg("seed"), py::arg("threads") = 0);
    m.def(
        "estimate_lambda_c",
        [](const AdjacencySpec& spec, const std::vector<double>& R_list, std::uint64_t replicas,
           std::pair<double, double> bracket, const Seed& seed, int threads, int steps) {
            return json_loads(
                lambda_c_to_json(
                    estimate_lambda_c(spec, R_list, replicas, bracket, seed, threads, steps))
                    .dump());
        },
        py::arg("spec"), py::arg("R_list"), py::arg("replicas"), py::arg("lambda_bracket"),
        py::arg("seed"), py::arg("threads") = 0, py::arg("bisection_steps") = 10);
}
