#include "hrcm/svg.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace hrcm {

namespace {

struct Circle {
    double cx, cy, r;
};

// Euclidean image of the hyperbolic circle of radius rho centred at p.
// Its centre lies on the ray through p; the radial extremes are at
// tanh((r_h +- rho)/2) along that ray.
Circle euclid_image(const HPoint& p, double rho) {
    double t = std::hypot(p.coords[0], p.coords[1]);
    double r_h = 2.0 * std::atanh(std::min(t, 1.0 - 1e-16));
    double t_out = std::tanh(0.5 * (r_h + rho));
    double t_in = std::tanh(0.5 * (r_h - rho));
    double ux = 1.0, uy = 0.0;
    if (t > 0.0) {
        ux = p.coords[0] / t;
        uy = p.coords[1] / t;
    }
    double c = 0.5 * (t_out + t_in);
    return {c * ux, c * uy, 0.5 * (t_out - t_in)};
}

void fmt(std::string& out, const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    out += buf;
}

double sx(double x) { return 500.0 + 500.0 * x; }
double sy(double y) { return 500.0 - 500.0 * y; }

}  // namespace

std::string render_configuration_svg(const Configuration& config, double vertex_disc_radius) {
    if (config.cloud.d != 2)
        throw std::invalid_argument("render_configuration_svg: only d = 2 can be drawn");
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    out += "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    out += "<circle cx=\"500\" cy=\"500\" r=\"500\" fill=\"none\" stroke=\"black\" "
           "stroke-width=\"2\"/>\n";

    for (const auto& [i, j] : config.edges) {
        const auto& a = config.cloud.points[i].coords;
        const auto& b = config.cloud.points[j].coords;
        fmt(out,
            "<line x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" stroke=\"#808080\" "
            "stroke-width=\"0.8\"/>\n",
            sx(a[0]), sy(a[1]), sx(b[0]), sy(b[1]));
    }
    if (vertex_disc_radius > 0.0) {
        for (const auto& p : config.cloud.points) {
            Circle c = euclid_image(p, vertex_disc_radius);
            fmt(out,
                "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\" fill=\"#4477cc\" "
                "fill-opacity=\"0.55\" stroke=\"none\"/>\n",
                sx(c.cx), sy(c.cy), 500.0 * c.r);
        }
    }
    for (const auto& p : config.cloud.points) {
        fmt(out, "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"1.6\" fill=\"black\"/>\n",
            sx(p.coords[0]), sy(p.coords[1]));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace hrcm
