#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <utility>
#include <vector>

#include "bellxs/angles.hpp"
#include "bellxs/bell_xsec.hpp"
#include "bellxs/geometry.hpp"
#include "bellxs/incoherent.hpp"
#include "bellxs/kinematics.hpp"
#include "bellxs/polarimetry.hpp"
#include "bellxs/ratios.hpp"

namespace py = pybind11;
using namespace bellxs;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polarization-correlated Compton scattering observables for Bell photon pairs";
  m.attr("__version__") = "0.1.0";
  m.attr("KEV_PER_MC2") = kKevPerMc2;

  py::register_exception<TableFormatError>(m, "TableFormatError", PyExc_ValueError);

  m.def("deg_to_rad", &deg_to_rad, py::arg("degrees"));
  m.def("rad_to_deg", &rad_to_deg, py::arg("radians"));

  m.def(
      "kev_to_mc2", [](double kev) { return kev_to_mc2(kev).value; }, py::arg("kev"),
      "Convert a photon energy from keV to electron-rest-mass units.");
  m.def(
      "mc2_to_kev", [](double e) { return mc2_to_kev(PhotonEnergy{e}); }, py::arg("e"),
      "Convert a photon energy from electron-rest-mass units to keV.");
  m.def(
      "scattered_energy",
      [](double e_max, double theta) {
        return scattered_energy(PhotonEnergy{e_max}, theta).value;
      },
      py::arg("e_max"), py::arg("theta"),
      "Compton-scattered photon energy at angle theta, energies in mc^2 units.");
  m.def(
      "scattered_energy_bound",
      [](double e_o, double e_b, double theta) {
        return scattered_energy_bound(PhotonEnergy{e_o}, BindingEnergy{e_b}, theta).value;
      },
      py::arg("e_o"), py::arg("e_b"), py::arg("theta"),
      "Scattered energy after spending the binding energy e_b up front.");

  py::class_<StokesVector>(m, "StokesVector",
                           "Stokes vector (I, Q, U, V) relative to the scattering plane.")
      .def(py::init<double, double, double, double>(), py::arg("i") = 0.0,
           py::arg("q") = 0.0, py::arg("u") = 0.0, py::arg("v") = 0.0)
      .def_readwrite("i", &StokesVector::i)
      .def_readwrite("q", &StokesVector::q)
      .def_readwrite("u", &StokesVector::u)
      .def_readwrite("v", &StokesVector::v)
      .def_static("plus", &StokesVector::plus)
      .def_static("minus", &StokesVector::minus)
      .def_static("unpolarized", &StokesVector::unpolarized)
      .def("__repr__", [](const StokesVector& s) {
        std::ostringstream out;
        out << "StokesVector(i=" << s.i << ", q=" << s.q << ", u=" << s.u
            << ", v=" << s.v << ")";
        return out.str();
      });

  py::class_<Mueller4>(m, "Mueller4", "4x4 Mueller matrix, row-major.")
      .def("at", &Mueller4::at, py::arg("row"), py::arg("col"))
      .def("apply", &Mueller4::apply, py::arg("s"));

  py::class_<RotationMatrix, Mueller4>(m, "RotationMatrix")
      .def_readonly("psi", &RotationMatrix::psi);

  py::class_<TransitionMatrix, Mueller4>(m, "TransitionMatrix")
      .def_readonly("theta", &TransitionMatrix::theta)
      .def_property_readonly("e_o",
                             [](const TransitionMatrix& t) { return t.e_o.value; });

  m.def("rotation_matrix", &rotation_matrix, py::arg("psi"),
        "Frame rotation of the linear Stokes components by azimuth psi.");
  m.def(
      "transition_matrix",
      [](double theta, double e_o) { return transition_matrix(theta, PhotonEnergy{e_o}); },
      py::arg("theta"), py::arg("e_o"),
      "Compton transition matrix at angle theta for incident energy e_o (mc^2).");
  m.def("detected_intensity", &detected_intensity, py::arg("t"), py::arg("m"),
        py::arg("s"), "Intensity <I| T M |s> seen by one detector arm.");
  m.def(
      "arm_intensity",
      [](double theta, double e_o, double psi, const StokesVector& s) {
        return arm_intensity(theta, PhotonEnergy{e_o}, psi, s);
      },
      py::arg("theta"), py::arg("e_o"), py::arg("psi"), py::arg("s"));
  m.def(
      "kn_polarized_oracle",
      [](double theta, double e_o, double pol_angle) {
        return kn_polarized_oracle(theta, PhotonEnergy{e_o}, pol_angle);
      },
      py::arg("theta"), py::arg("e_o"), py::arg("pol_angle"),
      "Closed-form polarized Klein-Nishina intensity, for cross-checks.");

  py::enum_<BellState>(m, "BellState")
      .value("PSI_PLUS", BellState::PsiPlus)
      .value("PSI_MINUS", BellState::PsiMinus)
      .value("PHI_PLUS", BellState::PhiPlus)
      .value("PHI_MINUS", BellState::PhiMinus);

  py::enum_<StateFamily>(m, "StateFamily")
      .value("PSI", StateFamily::Psi)
      .value("PHI", StateFamily::Phi);

  py::enum_<ArrangementKind>(m, "ArrangementKind")
      .value("ENERGY_PARAM", ArrangementKind::EnergyParam)
      .value("PHASE_PARAM", ArrangementKind::PhaseParam);

  m.def("family_of", &family_of, py::arg("state"));

  py::class_<JointKinematics>(m, "JointKinematics",
                              "Scattering angles, relative azimuth, and incident "
                              "energies (mc^2 units) for the two arms.")
      .def(py::init([](double theta_i, double theta_s, double eta, double e_oi,
                       double e_os) {
             return JointKinematics{theta_i, theta_s, eta, PhotonEnergy{e_oi},
                                    PhotonEnergy{e_os}};
           }),
           py::arg("theta_i"), py::arg("theta_s"), py::arg("eta"), py::arg("e_oi"),
           py::arg("e_os"))
      .def_readwrite("theta_i", &JointKinematics::theta_i)
      .def_readwrite("theta_s", &JointKinematics::theta_s)
      .def_readwrite("eta", &JointKinematics::eta)
      .def_property(
          "e_oi", [](const JointKinematics& jk) { return jk.e_oi.value; },
          [](JointKinematics& jk, double e) { jk.e_oi = PhotonEnergy{e}; })
      .def_property(
          "e_os", [](const JointKinematics& jk) { return jk.e_os.value; },
          [](JointKinematics& jk, double e) { jk.e_os = PhotonEnergy{e}; });

  m.def("ddxsec_kn", &ddxsec_kn, py::arg("state"), py::arg("jk"),
        "Double-differential Klein-Nishina cross section for one Bell state.");
  m.def("kn_product", &kn_product, py::arg("jk"),
        "Half the product of the two unpolarized arm intensities; the psi and phi "
        "cross sections of a pair sum to this.");

  py::class_<ScatteringFunctionTable>(m, "ScatteringFunctionTable",
                                      "Tabulated incoherent scattering function S(x), "
                                      "linearly interpolated with endpoint clamping.")
      .def_static("load_file", &ScatteringFunctionTable::load_file, py::arg("path"),
                  py::arg("element_z"))
      .def_static(
          "from_text",
          [](const std::string& text, int element_z) {
            std::istringstream in(text);
            return ScatteringFunctionTable::load(in, element_z);
          },
          py::arg("text"), py::arg("element_z"))
      .def_static("free_electron", &ScatteringFunctionTable::free_electron,
                  py::arg("element_z") = 1)
      .def("evaluate_at_x", &ScatteringFunctionTable::evaluate_at_x, py::arg("x"))
      .def_property_readonly("element_z", &ScatteringFunctionTable::element_z)
      .def_property_readonly("rows", [](const ScatteringFunctionTable& table) {
        std::vector<std::pair<double, double>> rows;
        rows.reserve(table.rows().size());
        for (const auto& sample : table.rows()) {
          rows.emplace_back(sample.x, sample.s);
        }
        return rows;
      });

  m.def(
      "evaluate_s",
      [](const ScatteringFunctionTable& table, double theta, double e_o) {
        return evaluate_s(table, theta, PhotonEnergy{e_o});
      },
      py::arg("table"), py::arg("theta"), py::arg("e_o"),
      "S at the momentum transfer set by theta and the incident energy (mc^2).");
  m.def("incoherent_ddxsec", &incoherent_ddxsec, py::arg("state"), py::arg("jk"),
        py::arg("table"));
  m.def(
      "ia_precision",
      [](double e_oi, double e_os, double theta_i, double theta_s, double e_b) {
        return ia_precision(
            {PhotonEnergy{e_oi}, PhotonEnergy{e_os}, theta_i, theta_s, BindingEnergy{e_b}});
      },
      py::arg("e_oi"), py::arg("e_os"), py::arg("theta_i"), py::arg("theta_s"),
      py::arg("e_b"),
      "Relative impulse-approximation precision, quadrature-summed over both arms.");
  m.def(
      "xsec_with_band",
      [](BellState state, const JointKinematics& jk, const ScatteringFunctionTable& table,
         double e_b) {
        const BandedValue banded = xsec_with_band(state, jk, table, BindingEnergy{e_b});
        return py::make_tuple(banded.central, banded.half_width);
      },
      py::arg("state"), py::arg("jk"), py::arg("table"), py::arg("e_b"),
      "Incoherent cross section and its band half-width as a (central, half) tuple.");

  m.def("wrap_azimuth", &wrap_azimuth, py::arg("phi"));
  m.def(
      "relative_azimuth",
      [](double phi_i, double phi_s, double delta_theta_is) {
        return relative_azimuth(DetectorAzimuths{phi_i, phi_s},
                                PhaseMatching{delta_theta_is});
      },
      py::arg("phi_i"), py::arg("phi_s"), py::arg("delta_theta_is"),
      "Effective relative azimuth between the arms for non-collinear beams.");
  m.def(
      "arrangement_azimuths",
      [](ArrangementKind kind, double delta_theta_is) {
        const AzimuthPair pair = arrangement_azimuths(kind, PhaseMatching{delta_theta_is});
        return py::make_tuple(pair.eta_max, pair.eta_min);
      },
      py::arg("kind"), py::arg("delta_theta_is"),
      "The (maximizing, minimizing) relative azimuths probed by an arrangement.");

  py::class_<RatioResult>(m, "RatioResult")
      .def_readonly("theta", &RatioResult::theta)
      .def_readonly("value", &RatioResult::value)
      .def_readonly("half_width", &RatioResult::half_width);

  py::class_<PeakReport>(m, "PeakReport")
      .def_readonly("theta_star", &PeakReport::theta_star)
      .def_readonly("value_star", &PeakReport::value_star)
      .def_readonly("grid_step", &PeakReport::grid_step);

  m.def(
      "ratio_nd",
      [](double theta, double e_oi, double e_os, StateFamily family) {
        return ratio_nd(theta, PhotonEnergy{e_oi}, PhotonEnergy{e_os}, family);
      },
      py::arg("theta"), py::arg("e_oi"), py::arg("e_os"), py::arg("family"),
      "Azimuthal cross-section ratio between the perpendicular and parallel settings.");
  m.def(
      "ratio_d",
      [](double theta, double e_o, StateFamily family) {
        return ratio_d(theta, PhotonEnergy{e_o}, family);
      },
      py::arg("theta"), py::arg("e_o"), py::arg("family"),
      "Equal-energy specialization of ratio_nd.");
  m.def(
      "rho_nd",
      [](double theta, double e_oi, double e_os, double delta_theta_is,
         StateFamily family) {
        return rho_nd(theta, PhotonEnergy{e_oi}, PhotonEnergy{e_os},
                      PhaseMatching{delta_theta_is}, family);
      },
      py::arg("theta"), py::arg("e_oi"), py::arg("e_os"), py::arg("delta_theta_is"),
      py::arg("family"),
      "Ratio for non-collinear beams with the given opening angle.");
  m.def(
      "ratio_with_band",
      [](double theta, double e_oi, double e_os, StateFamily family, double e_b) {
        return ratio_with_band(theta, PhotonEnergy{e_oi}, PhotonEnergy{e_os}, family,
                               BindingEnergy{e_b});
      },
      py::arg("theta"), py::arg("e_oi"), py::arg("e_os"), py::arg("family"),
      py::arg("e_b"));
  m.def(
      "rho_with_band",
      [](double theta, double e_oi, double e_os, double delta_theta_is,
         StateFamily family, double e_b) {
        return rho_with_band(theta, PhotonEnergy{e_oi}, PhotonEnergy{e_os},
                             PhaseMatching{delta_theta_is}, family, BindingEnergy{e_b});
      },
      py::arg("theta"), py::arg("e_oi"), py::arg("e_os"), py::arg("delta_theta_is"),
      py::arg("family"), py::arg("e_b"));
  m.def("peak_scan", &peak_scan, py::arg("fn"), py::arg("theta_min"),
        py::arg("theta_max"), py::arg("coarse_step"), py::arg("refine_step"),
        py::call_guard<py::gil_scoped_release>(),
        "Two-stage deterministic grid argmax of fn over [theta_min, theta_max].");
}
