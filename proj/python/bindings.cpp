// SPDX-License-Identifier: Apache-2.0
//
// risanm: RIS-assisted mmWave channel estimation via atomic norm minimization
// Copyright (C) 2026 risanm project contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risanm/anm.hpp"
#include "risanm/channel.hpp"
#include "risanm/config.hpp"
#include "risanm/control.hpp"
#include "risanm/harness.hpp"
#include "risanm/hybrid.hpp"
#include "risanm/metrics.hpp"
#include "risanm/passive.hpp"
#include "risanm/rng.hpp"
#include "risanm/spectral.hpp"
#include "risanm/types.hpp"

namespace py = pybind11;
using namespace risanm;

PYBIND11_MODULE(_risanm, m)
{
    m.doc() = "RIS-assisted mmWave channel estimation via atomic norm minimization";

    // ------------------------------------------------------------ core types
    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", py::overload_cast<>(&Rng::uniform))
        .def("normal", &Rng::normal)
        .def("cnormal", &Rng::cnormal)
        .def("unit_phase", &Rng::unit_phase);

    py::class_<LinkParams>(m, "LinkParams")
        .def(py::init<>())
        .def_readwrite("arrival_freqs", &LinkParams::arrival_freqs)
        .def_readwrite("departure_freqs", &LinkParams::departure_freqs)
        .def_readwrite("gains", &LinkParams::gains)
        .def("paths", &LinkParams::paths);

    py::class_<CascadeParams>(m, "CascadeParams")
        .def(py::init<>())
        .def_readwrite("delta_freqs", &CascadeParams::delta_freqs)
        .def_readwrite("product_gains", &CascadeParams::product_gains)
        .def("size", &CascadeParams::size);

    py::class_<PhaseControl>(m, "PhaseControl")
        .def(py::init<>())
        .def_readwrite("omega", &PhaseControl::omega);

    py::class_<ToeplitzGenerator>(m, "ToeplitzGenerator")
        .def(py::init<>())
        .def_readwrite("first_col", &ToeplitzGenerator::first_col)
        .def("size", &ToeplitzGenerator::size);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("tau_scale", &SolverOptions::tau_scale)
        .def_readwrite("penalty", &SolverOptions::penalty)
        .def_readwrite("max_iters", &SolverOptions::max_iters)
        .def_readwrite("tol_primal", &SolverOptions::tol_primal)
        .def_readwrite("tol_dual", &SolverOptions::tol_dual)
        .def_readwrite("adapt_penalty", &SolverOptions::adapt_penalty)
        .def_readwrite("tau_floor_rel", &SolverOptions::tau_floor_rel);

    py::class_<AnmSolution>(m, "AnmSolution")
        .def_readonly("estimate", &AnmSolution::estimate)
        .def_readonly("toeplitz_left", &AnmSolution::toeplitz_left)
        .def_readonly("toeplitz_right", &AnmSolution::toeplitz_right)
        .def_readonly("iterations", &AnmSolution::iterations)
        .def_readonly("primal_residual", &AnmSolution::primal_residual)
        .def_readonly("dual_residual", &AnmSolution::dual_residual)
        .def_readonly("converged", &AnmSolution::converged);

    py::enum_<CombinerMode>(m, "CombinerMode")
        .value("direct", CombinerMode::direct)
        .value("analog_random_phase", CombinerMode::analog_random_phase);

    py::class_<HybridSetup>(m, "HybridSetup")
        .def(py::init<>())
        .def_readwrite("n_beams", &HybridSetup::n_beams)
        .def_readwrite("n_active", &HybridSetup::n_active)
        .def_readwrite("n_rf", &HybridSetup::n_rf)
        .def_readwrite("combiner_mode", &HybridSetup::combiner_mode)
        .def_readwrite("refresh_combiners", &HybridSetup::refresh_combiners);

    py::class_<PassiveSetup>(m, "PassiveSetup")
        .def(py::init<>())
        .def_readwrite("n0", &PassiveSetup::n0)
        .def_readwrite("m0", &PassiveSetup::m0)
        .def_readwrite("t_blocks", &PassiveSetup::t_blocks)
        .def_readwrite("n_rf_ms", &PassiveSetup::n_rf_ms)
        .def_readwrite("stage1_tau_scale", &PassiveSetup::stage1_tau_scale)
        .def_readwrite("stage1_max_iters", &PassiveSetup::stage1_max_iters)
        .def_readwrite("stage1_tol", &PassiveSetup::stage1_tol);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("mse_phi_rm", &TrialRecord::mse_phi_rm)
        .def_readonly("mse_theta_br", &TrialRecord::mse_theta_br)
        .def_readonly("mse_delta", &TrialRecord::mse_delta)
        .def_readonly("mse_rho", &TrialRecord::mse_rho)
        .def_readonly("ris_gain", &TrialRecord::ris_gain)
        .def_readonly("se_bits", &TrialRecord::se_bits)
        .def_readonly("overhead", &TrialRecord::overhead)
        .def_readonly("arch_label", &TrialRecord::arch_label)
        .def_readonly("failed", &TrialRecord::failed);

    // --------------------------------------------------------------- channel
    auto ch = m.def_submodule("channel");
    ch.def("wrap_freq", &channel::wrap_freq);
    ch.def("steering_vector", &channel::steering_vector, py::arg("n"), py::arg("f"));
    ch.def("steering_matrix", &channel::steering_matrix, py::arg("n"), py::arg("freqs"));

    py::class_<channel::Link>(ch, "Link")
        .def_readonly("params", &channel::Link::params)
        .def_readonly("matrix", &channel::Link::matrix);

    ch.def("synth_link", &channel::synth_link, py::arg("n_rx"), py::arg("n_tx"), py::arg("paths"),
           py::arg("min_sep_rx"), py::arg("min_sep_tx"), py::arg("rng"));
    ch.def("link_matrix", &channel::link_matrix, py::arg("n_rx"), py::arg("n_tx"),
           py::arg("params"));
    ch.def("cascade", &channel::cascade, py::arg("h_rm"), py::arg("omega"), py::arg("h_br"));
    ch.def("angle_differences", &channel::angle_differences, py::arg("phi_br"),
           py::arg("theta_rm"));
    ch.def("product_gains", &channel::product_gains, py::arg("rho_rm"), py::arg("rho_br"));
    ch.def("effective_g", &channel::effective_g, py::arg("cascade"), py::arg("omega"));

    // ------------------------------------------------------------------- anm
    auto an = m.def_submodule("anm");
    an.def("toeplitz_materialize", &anm::toeplitz_materialize);
    an.def("toeplitz_adjoint", &anm::toeplitz_adjoint);
    an.def("psd_project", &anm::psd_project);
    an.def("tau_rule", &anm::tau_rule, py::arg("sigma"), py::arg("n1"), py::arg("n2"),
           py::arg("opts"));
    an.def("matrix_anm", &anm::matrix_anm, py::arg("y"), py::arg("meff"), py::arg("x"),
           py::arg("n1"), py::arg("n2"), py::arg("tau"), py::arg("opts"),
           py::call_guard<py::gil_scoped_release>());
    an.def("vector_anm", &anm::vector_anm, py::arg("y"), py::arg("phi"), py::arg("tau"),
           py::arg("opts"), py::call_guard<py::gil_scoped_release>());

    // -------------------------------------------------------------- spectral
    auto sp = m.def_submodule("spectral");
    sp.def("rootmusic", &spectral::rootmusic, py::arg("toeplitz"), py::arg("paths"));
    sp.def("ls_gains", &spectral::ls_gains, py::arg("y"), py::arg("op"));
    sp.def("match_permutation", &spectral::match_permutation, py::arg("truth"), py::arg("est"));

    // ---------------------------------------------------------------- hybrid
    auto hy = m.def_submodule("hybrid");
    py::class_<hybrid::HybridEstimate>(hy, "HybridEstimate")
        .def_readonly("link_br", &hybrid::HybridEstimate::link_br)
        .def_readonly("link_rm", &hybrid::HybridEstimate::link_rm)
        .def_readonly("cascade", &hybrid::HybridEstimate::cascade);
    hy.def("estimate_hybrid", &hybrid::estimate_hybrid, py::arg("h_br"), py::arg("h_rm"),
           py::arg("setup"), py::arg("paths"), py::arg("sigma"), py::arg("rng"), py::arg("opts"),
           py::call_guard<py::gil_scoped_release>());

    // --------------------------------------------------------------- passive
    auto pa = m.def_submodule("passive");
    py::class_<passive::PassiveEstimate>(pa, "PassiveEstimate")
        .def_readonly("theta_br", &passive::PassiveEstimate::theta_br)
        .def_readonly("phi_rm", &passive::PassiveEstimate::phi_rm)
        .def_readonly("cascade", &passive::PassiveEstimate::cascade)
        .def_readonly("uses", &passive::PassiveEstimate::uses);
    pa.def("estimate_passive", &passive::estimate_passive, py::arg("h_br"), py::arg("h_rm"),
           py::arg("setup"), py::arg("paths"), py::arg("sigma"), py::arg("rng"), py::arg("opts"),
           py::call_guard<py::gil_scoped_release>());

    // ---------------------------------------------------------------- control
    auto co = m.def_submodule("control");
    co.def("design_phase", &control::design_phase, py::arg("cascade"), py::arg("n_ris"));
    co.def("reconstruct_channel",
           py::overload_cast<const std::vector<double>&, const std::vector<double>&,
                             const CascadeParams&, const PhaseControl&, int, int>(
               &control::reconstruct_channel),
           py::arg("phi_rm"), py::arg("theta_br"), py::arg("cascade"), py::arg("omega"),
           py::arg("n_ms"), py::arg("n_bs"));
    co.def("reconstruct_channel",
           py::overload_cast<const LinkParams&, const LinkParams&, const PhaseControl&, int, int,
                             int>(&control::reconstruct_channel),
           py::arg("link_rm"), py::arg("link_br"), py::arg("omega"), py::arg("n_ms"),
           py::arg("n_bs"), py::arg("n_ris"));
    co.def("design_beamformers", &control::design_beamformers, py::arg("h_hat"));

    // ---------------------------------------------------------------- metrics
    auto me = m.def_submodule("metrics");
    me.def("mse_freqs", &metrics::mse_freqs, py::arg("truth"), py::arg("est"), py::arg("l_norm"));
    me.def("mse_gains", &metrics::mse_gains, py::arg("delta_truth"), py::arg("rho_truth"),
           py::arg("delta_est"), py::arg("rho_est"));
    me.def("ris_gain", &metrics::ris_gain, py::arg("theta_rm"), py::arg("phi_br"),
           py::arg("omega"));
    me.def("se_bound",
           py::overload_cast<const Mat&, const Vec&, const Vec&, double>(&metrics::se_bound),
           py::arg("h"), py::arg("f"), py::arg("w"), py::arg("sigma2"));
    me.def("se_bound",
           py::overload_cast<const Mat&, const Mat&, const PhaseControl&, const Vec&, const Vec&,
                             double>(&metrics::se_bound),
           py::arg("h_br"), py::arg("h_rm"), py::arg("omega"), py::arg("f"), py::arg("w"),
           py::arg("sigma2"));
    me.def("overhead_hybrid", &metrics::overhead_hybrid, py::arg("n"), py::arg("k"),
           py::arg("n_rf"));
    me.def("overhead_passive", &metrics::overhead_passive, py::arg("n0"), py::arg("m0"),
           py::arg("t"), py::arg("l_br"), py::arg("l_rm"), py::arg("n_rf_ms"));

    // ---------------------------------------------------------------- harness
    auto ha = m.def_submodule("harness");
    py::register_exception<harness::ConfigError>(ha, "ConfigError");

    py::class_<harness::ExperimentConfig>(ha, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_bs", &harness::ExperimentConfig::n_bs)
        .def_readwrite("n_ris", &harness::ExperimentConfig::n_ris)
        .def_readwrite("n_ms", &harness::ExperimentConfig::n_ms)
        .def_readwrite("paths", &harness::ExperimentConfig::paths)
        .def_readwrite("snr_grid_db", &harness::ExperimentConfig::snr_grid_db)
        .def_readwrite("trials", &harness::ExperimentConfig::trials)
        .def_readwrite("architectures", &harness::ExperimentConfig::architectures)
        .def_readwrite("hybrid_setups", &harness::ExperimentConfig::hybrid_setups)
        .def_readwrite("passive", &harness::ExperimentConfig::passive)
        .def_readwrite("solver", &harness::ExperimentConfig::solver)
        .def_readwrite("seed", &harness::ExperimentConfig::seed)
        .def_readwrite("min_sep_rule", &harness::ExperimentConfig::min_sep_rule)
        .def_readwrite("se_on_estimate", &harness::ExperimentConfig::se_on_estimate);

    py::class_<harness::ResultRow>(ha, "ResultRow")
        .def_readonly("arch", &harness::ResultRow::arch)
        .def_readonly("snr_db", &harness::ResultRow::snr_db)
        .def_readonly("metric", &harness::ResultRow::metric)
        .def_readonly("mean", &harness::ResultRow::mean)
        .def_readonly("std_err", &harness::ResultRow::std_err)
        .def_readonly("trials", &harness::ResultRow::trials)
        .def_readonly("failures", &harness::ResultRow::failures);

    py::class_<harness::ResultTable>(ha, "ResultTable")
        .def(py::init<>())
        .def_readwrite("rows", &harness::ResultTable::rows);

    py::class_<harness::SweepResult>(ha, "SweepResult")
        .def_readonly("table", &harness::SweepResult::table)
        .def_readonly("budget_exceeded", &harness::SweepResult::budget_exceeded);

    py::class_<harness::PairedComparison>(ha, "PairedComparison")
        .def_readonly("t_stat", &harness::PairedComparison::t_stat)
        .def_readonly("pairs", &harness::PairedComparison::pairs)
        .def_readonly("significant", &harness::PairedComparison::significant);

    ha.def("metric_names", &harness::metric_names);
    ha.def("worker_count", &harness::worker_count);
    ha.def("known_arch_labels", &harness::known_arch_labels);
    ha.def("parse_config_text", &harness::parse_config_text, py::arg("text"));
    ha.def("load_config", &harness::load_config, py::arg("path"));
    ha.def("dump_config", &harness::dump_config, py::arg("cfg"));
    ha.def("validate_config", &harness::validate_config, py::arg("cfg"));
    ha.def("run_trial", &harness::run_trial, py::arg("cfg"), py::arg("arch"), py::arg("snr_db"),
           py::arg("trial_index"), py::call_guard<py::gil_scoped_release>());
    ha.def("run_cell", &harness::run_cell, py::arg("cfg"), py::arg("arch"), py::arg("snr_db"),
           py::arg("workers"), py::call_guard<py::gil_scoped_release>());
    ha.def(
        "run_sweep",
        [](const harness::ExperimentConfig& cfg) { return harness::run_sweep(cfg); },
        py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
    ha.def("csv_text", &harness::csv_text, py::arg("table"));
    ha.def("write_csv", &harness::write_csv, py::arg("table"), py::arg("path"));
    ha.def("read_csv", &harness::read_csv, py::arg("path"));
    ha.def("write_svg_plots", &harness::write_svg_plots, py::arg("table"), py::arg("out_dir"));
    ha.def("paired_greater", &harness::paired_greater, py::arg("a"), py::arg("b"));
}
