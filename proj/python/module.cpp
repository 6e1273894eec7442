// Copyright 2026 The corrlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corrlab/correlations.hpp"
#include "corrlab/entropy.hpp"
#include "corrlab/fixtures.hpp"
#include "corrlab/metrics.hpp"
#include "corrlab/protocols.hpp"

namespace py = pybind11;
using namespace corrlab;

PYBIND11_MODULE(_corrlab, m) {
  m.doc() = "correlation decay and smooth-entropy laboratory";

  py::class_<ChainState>(m, "ChainState")
      .def_property_readonly("n", &ChainState::sites)
      .def_property_readonly("site_dim", &ChainState::site_dim)
      .def_property_readonly("amplitudes", &ChainState::amplitudes);

  py::class_<Region>(m, "Region")
      .def(py::init([](int start, int length) {
             return Region{start, length};
           }),
           py::arg("start"), py::arg("length"))
      .def_readwrite("start", &Region::start)
      .def_readwrite("length", &Region::length);

  py::class_<DensityOperator>(m, "DensityOperator")
      .def_readonly("mat", &DensityOperator::mat)
      .def("trace", &DensityOperator::trace);

  py::class_<EntropyReport>(m, "EntropyReport")
      .def_readonly("value_lower", &EntropyReport::value_lower)
      .def_readonly("value_upper", &EntropyReport::value_upper)
      .def_readonly("certificate_lower", &EntropyReport::certificate_lower)
      .def_readonly("certificate_upper", &EntropyReport::certificate_upper)
      .def_readonly("epsilon", &EntropyReport::epsilon);

  py::class_<CorrelationEstimate>(m, "CorrelationEstimate")
      .def_readonly("lower", &CorrelationEstimate::lower)
      .def_readonly("upper", &CorrelationEstimate::upper)
      .def_readonly("witness_m", &CorrelationEstimate::witness_m)
      .def_readonly("witness_n", &CorrelationEstimate::witness_n)
      .def_readonly("converged", &CorrelationEstimate::converged);

  py::class_<DecaySample>(m, "DecaySample")
      .def_readonly("separation", &DecaySample::separation)
      .def_readonly("cor_upper", &DecaySample::cor_upper)
      .def_readonly("cor_lower", &DecaySample::cor_lower)
      .def_readonly("bound", &DecaySample::bound);

  py::class_<DecayCertificate>(m, "DecayCertificate")
      .def_readonly("xi", &DecayCertificate::xi)
      .def_readonly("l0", &DecayCertificate::l0)
      .def_readonly("samples", &DecayCertificate::samples)
      .def_readonly("detail", &DecayCertificate::detail)
      .def_property_readonly("verdict", [](const DecayCertificate& c) {
        switch (c.verdict) {
          case DecayCertificate::Verdict::certified: return "certified";
          case DecayCertificate::Verdict::violated: return "violated";
          default: return "indeterminate";
        }
      });

  m.def("make_fixture", &make_fixture, py::arg("spec"), py::arg("seed") = 0);
  m.def("reduced_density", &reduced_density, py::arg("state"),
        py::arg("region"));
  m.def(
      "reduced_density_pair",
      [](const ChainState& s, const Region& x, const Region& y) {
        return reduced_density_pair(s, x, y);
      },
      py::arg("state"), py::arg("x"), py::arg("y"));

  m.def("fidelity",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(
            &fidelity));
  m.def("purified_distance",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(
            &purified_distance));
  m.def("d1_distance",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(
            &d1_distance));

  m.def("von_neumann",
        py::overload_cast<const ComplexMatrix&>(&von_neumann));
  m.def("hmax_smooth",
        py::overload_cast<const ComplexMatrix&, double>(&hmax_smooth),
        py::arg("rho"), py::arg("eps"));
  m.def(
      "hmin_conditional",
      [](const ComplexMatrix& rho, int da, int db) {
        return hmin_conditional(rho, da, db).hmin_bits();
      },
      py::arg("rho_ab"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("mutual_information", &mutual_information, py::arg("rho_ab"),
        py::arg("dim_a"), py::arg("dim_b"));

  m.def("correlation_estimate", &correlation_estimate, py::arg("rho_xy"),
        py::arg("dim_x"), py::arg("dim_y"), py::arg("restarts") = 16,
        py::arg("tol") = 1e-10, py::arg("seed") = 0x11c5);
  m.def("edc_certify", &edc_certify, py::arg("state"), py::arg("xi"),
        py::arg("l0"), py::arg("region_cap") = 2);
}
