#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "likemind/server.hpp"
#include "likemind/simulator.hpp"
#include "likemind/synthetic.hpp"

namespace py = pybind11;
using namespace likemind;

namespace {

struct PyDataset {
  std::shared_ptr<Dataset> ds;
};

struct PyService {
  std::shared_ptr<Dataset> ds;
  std::unique_ptr<Service> service;
};

Strategy strategy(const std::string& s) { return parse_strategy(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);
  py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);
  py::register_exception<ConflictError>(m, "ConflictError", PyExc_RuntimeError);

  py::class_<PyDataset>(m, "Dataset")
      .def_static(
          "load",
          [](const std::string& pois, const std::string& users, const std::string& checkins, bool strict,
             int utc_offset_minutes) {
            LoadConfig cfg;
            cfg.strict = strict;
            cfg.utc_offset_minutes = utc_offset_minutes;
            py::gil_scoped_release release;
            return PyDataset{std::make_shared<Dataset>(Dataset::load_files(pois, users, checkins, cfg))};
          },
          py::arg("pois"), py::arg("users"), py::arg("checkins"), py::arg("strict") = false,
          py::arg("utc_offset_minutes") = 0)
      .def_static(
          "synthetic",
          [](std::size_t pois, std::size_t visitors, std::size_t checkins, std::uint64_t seed) {
            SyntheticConfig cfg;
            cfg.pois = pois;
            cfg.visitors = visitors;
            cfg.checkins = checkins;
            cfg.seed = seed;
            py::gil_scoped_release release;
            return PyDataset{std::make_shared<Dataset>(load_synthetic(cfg))};
          },
          py::arg("pois") = 5000, py::arg("visitors") = 2000, py::arg("checkins") = 50000, py::arg("seed") = 7)
      .def_static("restore",
                  [](const std::string& path) { return PyDataset{std::make_shared<Dataset>(Dataset::restore_file(path))}; })
      .def("save", [](const PyDataset& d, const std::string& path) { d.ds->save_file(path); })
      .def_property_readonly("poi_count", [](const PyDataset& d) { return d.ds->pois().size(); })
      .def_property_readonly("visitor_count", [](const PyDataset& d) { return d.ds->visitors().size(); })
      .def_property_readonly("checkin_count", [](const PyDataset& d) { return d.ds->checkins().size(); })
      .def_property_readonly("warnings", [](const PyDataset& d) { return d.ds->warnings(); })
      .def("poi_ids", [](const PyDataset& d) {
        std::vector<std::string> ids;
        for (const auto& p : d.ds->pois()) ids.push_back(p.id);
        return ids;
      });

  py::class_<PyService>(m, "Service")
      .def(py::init([](const PyDataset& d, bool deterministic, std::uint64_t seed, const std::string& aliases_json) {
             ServerConfig cfg;
             cfg.deterministic = deterministic;
             cfg.seed = seed;
             CategoryAliases aliases;
             if (!aliases_json.empty()) aliases = CategoryAliases::from_json_text(aliases_json);
             PyService s{d.ds, nullptr};
             s.service = std::make_unique<Service>(*d.ds, std::move(aliases), cfg);
             return s;
           }),
           py::arg("dataset"), py::arg("deterministic") = false, py::arg("seed") = 1, py::arg("aliases_json") = "")
      .def("handle",
           [](PyService& s, const std::string& method, const std::string& path, const std::string& body) {
             Response r;
             {
               py::gil_scoped_release release;
               r = s.service->handle(method, path, body);
             }
             return py::make_tuple(r.status, r.body.dump());
           },
           py::arg("method"), py::arg("path"), py::arg("body") = "");

  m.def(
      "simulate",
      [](const PyDataset& d, std::size_t sessions, std::size_t iterations, const std::string& group_strategy,
         const std::string& mindset_strategy, double theta, double r, std::uint64_t seed,
         const std::string& baseline) {
        SimulationConfig cfg;
        cfg.sessions = sessions;
        cfg.iterations = iterations;
        cfg.group_strategy = strategy(group_strategy);
        cfg.mindset_strategy = strategy(mindset_strategy);
        cfg.theta = theta;
        cfg.r = r;
        cfg.seed = seed;
        std::vector<HrPoint> curve;
        {
          py::gil_scoped_release release;
          const Engine engine(*d.ds);
          const auto traces =
              baseline.empty() ? simulate(engine, cfg) : simulate_baseline(engine, cfg, parse_baseline(baseline));
          curve = hr_curve(traces, cfg.iterations);
        }
        std::vector<std::tuple<std::size_t, double, double>> out;
        for (const auto& p : curve) out.emplace_back(p.n, p.hr_iteration, p.hr_session);
        return out;
      },
      py::arg("dataset"), py::arg("sessions") = 100, py::arg("iterations") = 10, py::arg("group_strategy") = "random",
      py::arg("mindset_strategy") = "random", py::arg("theta") = 0.5, py::arg("r") = 500.0, py::arg("seed") = 1,
      py::arg("baseline") = "");

  m.def("mindset_catalog", [] { return mindset_catalog().dump(); });
}
