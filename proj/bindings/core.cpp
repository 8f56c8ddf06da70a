#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "toricfs/cli.hpp"
#include "toricfs/fan.hpp"

namespace py = pybind11;

namespace {

bool looks_like_json(const std::string& s) {
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{';
    }
    return false;
}

// Shared driver: exit codes 0/1/2 are decisions carried inside the document;
// 3 is an input error, 4 an internal one.
std::string run_or_throw(toricfs::RunConfig cfg) {
    std::ostringstream out, err;
    int code = toricfs::run(cfg, out, err);
    if (code == 3) throw py::value_error(err.str());
    if (code == 4) throw std::runtime_error(err.str());
    return out.str();
}

void set_fan(toricfs::RunConfig& cfg, const std::string& fan) {
    if (looks_like_json(fan))
        cfg.fan_path = fan;  // inline document, resolved by the JSON loader
    else
        cfg.builtin_fan = fan;
}

std::string check_split(const std::string& fan, const std::string& bundle, int64_t p, int d,
                        const std::string& criterion, int d_max) {
    toricfs::RunConfig cfg;
    cfg.command = "check-split";
    set_fan(cfg, fan);
    cfg.bundle_spec = bundle;
    cfg.p = p;
    cfg.d = d;
    cfg.criterion = criterion;
    cfg.d_max = d_max;
    return run_or_throw(std::move(cfg));
}

std::string klyachko_info(const std::string& fan, const std::string& bundle, int64_t p, int d) {
    toricfs::RunConfig cfg;
    cfg.command = "klyachko-info";
    set_fan(cfg, fan);
    cfg.bundle_spec = bundle;
    cfg.p = p;
    cfg.d = d;
    return run_or_throw(std::move(cfg));
}

std::string sections(const std::string& fan, const std::string& bundle, int64_t p, int d,
                     bool charts) {
    toricfs::RunConfig cfg;
    cfg.command = "sections";
    set_fan(cfg, fan);
    cfg.bundle_spec = bundle;
    cfg.p = p;
    cfg.d = d;
    cfg.chart_restrictions = charts;
    return run_or_throw(std::move(cfg));
}

std::string cocycle(const std::string& fan, const std::string& bundle, int64_t p, int d) {
    toricfs::RunConfig cfg;
    cfg.command = "cocycle";
    set_fan(cfg, fan);
    cfg.bundle_spec = bundle;
    cfg.p = p;
    cfg.d = d;
    return run_or_throw(std::move(cfg));
}

std::string fixtures(int64_t p, int d) {
    toricfs::RunConfig cfg;
    cfg.command = "fixtures";
    cfg.p = p;
    cfg.d = d;
    return run_or_throw(std::move(cfg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact splitting checks for projectivized toric vector bundles over finite fields. "
        "Fans are builtin names or JSON text; bundles are builtin specs (tangent, cotangent, "
        "line:[..], sum:[[..],..]) or JSON text.  All calls return JSON document strings.";
    m.attr("__version__") = "0.1.0";
    m.def("check_split", &check_split, py::arg("fan"), py::arg("bundle"), py::arg("p"),
          py::arg("d") = 1, py::arg("criterion") = "all", py::arg("d_max") = 4,
          "Run the splitting criteria; the document carries the decision and reports.");
    m.def("klyachko_info", &klyachko_info, py::arg("fan"), py::arg("bundle"), py::arg("p") = 2,
          py::arg("d") = 1, "Per-ray filtration jumps, dimensions and the spread.");
    m.def("sections", &sections, py::arg("fan"), py::arg("bundle"), py::arg("p") = 2,
          py::arg("d") = 1, py::arg("charts") = false,
          "Weight spaces of global sections; charts=True adds per-cone monomial restrictions.");
    m.def("cocycle", &cocycle, py::arg("fan"), py::arg("bundle"), py::arg("p") = 2,
          py::arg("d") = 1, "Per-cone transition constants and the cocycle check.");
    m.def("fixtures", &fixtures, py::arg("p") = 2, py::arg("d") = 1,
          "The named fixture bundles over GF(p^d).");
    m.def(
        "builtin_fans", [] { return toricfs::Fan::builtin_names(); },
        "Names accepted for the fan argument.");
}
