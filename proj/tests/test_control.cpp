// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>

#include "risanm/channel.hpp"
#include "risanm/control.hpp"
#include "risanm/hybrid.hpp"
#include "risanm/metrics.hpp"
#include "risanm/rng.hpp"

using namespace risanm;
using cx = risanm::cxd;

TEST_CASE("single-atom phase design conjugates the steering vector")
{
    CascadeParams cas;
    cas.delta_freqs = {0.13};
    cas.product_gains = {cx(0.4, -1.1)};
    const PhaseControl om = control::design_phase(cas, 32);
    REQUIRE(om.omega.size() == 32);
    for (int k = 0; k < 32; k++)
        CHECK(std::abs(om.omega(k)) == doctest::Approx(1.0).epsilon(1e-12));

    const Vec a = channel::steering_vector(32, 0.13);
    const cx resp = (om.omega.transpose() * a).value();
    CHECK(std::abs(resp) == doctest::Approx(32.0).epsilon(1e-10));
    CHECK(metrics::ris_gain({0.3}, {0.3 + 0.13}, om) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phase design rejects degenerate inputs")
{
    CascadeParams empty;
    CHECK_THROWS_AS(control::design_phase(empty, 32), std::invalid_argument);

    CascadeParams zeros;
    zeros.delta_freqs = {0.1, 0.2};
    zeros.product_gains = {cx(0.0, 0.0), cx(0.0, 0.0)};
    CHECK_THROWS_AS(control::design_phase(zeros, 32), std::invalid_argument);
}

TEST_CASE("four-atom phase design beats random phase controls")
{
    Rng rng(201);
    const channel::Link br = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, rng);
    const channel::Link rm = channel::synth_link(16, 32, 2, 4.0 / 16.0, 4.0 / 32.0, rng);
    CascadeParams cas;
    cas.delta_freqs =
        channel::angle_differences(br.params.arrival_freqs, rm.params.departure_freqs);
    cas.product_gains = channel::product_gains(rm.params.gains, br.params.gains);

    const PhaseControl designed = control::design_phase(cas, 32);
    const double g_designed = metrics::ris_gain(rm.params.departure_freqs,
                                                br.params.arrival_freqs, designed);

    double g_best_random = 0.0;
    for (int trial = 0; trial < 1000; trial++)
    {
        PhaseControl om;
        om.omega = Vec(32);
        for (int k = 0; k < 32; k++)
            om.omega(k) = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        g_best_random = std::max(
            g_best_random,
            metrics::ris_gain(rm.params.departure_freqs, br.params.arrival_freqs, om));
    }
    CHECK(g_designed > g_best_random);
}

TEST_CASE("phase design ignores a common gain phase")
{
    CascadeParams cas;
    cas.delta_freqs = {-0.21, 0.02, 0.17, 0.4};
    cas.product_gains = {cx(1.0, 0.2), cx(-0.3, 0.6), cx(0.1, -0.9), cx(0.5, 0.5)};
    CascadeParams rotated = cas;
    const cx ph = std::polar(1.0, 1.234);
    for (cx& g : rotated.product_gains)
        g *= ph;

    const PhaseControl a = control::design_phase(cas, 32);
    const PhaseControl b = control::design_phase(rotated, 32);
    CHECK((a.omega - b.omega).norm() < 1e-10);
}

TEST_CASE("cascade reconstruction from exact parameters matches the channel")
{
    Rng rng(203);
    const channel::Link br = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, rng);
    const channel::Link rm = channel::synth_link(16, 32, 2, 4.0 / 16.0, 4.0 / 32.0, rng);
    CascadeParams cas;
    cas.delta_freqs =
        channel::angle_differences(br.params.arrival_freqs, rm.params.departure_freqs);
    cas.product_gains = channel::product_gains(rm.params.gains, br.params.gains);

    PhaseControl om;
    om.omega = Vec(32);
    for (int k = 0; k < 32; k++)
        om.omega(k) = std::polar(1.0, 2.0 * M_PI * rng.uniform());

    const Mat recon = control::reconstruct_channel(rm.params.arrival_freqs,
                                                   br.params.departure_freqs, cas, om, 16, 16);
    const Mat truth = channel::cascade(rm.matrix, om, br.matrix);
    CHECK((recon - truth).norm() < 1e-10 * truth.norm());

    const Eigen::JacobiSVD<Mat> svd(recon);
    CHECK(svd.singularValues()(2) < 1e-10 * svd.singularValues()(0));

    CascadeParams bad = cas;
    bad.product_gains.pop_back();
    bad.delta_freqs.pop_back();
    CHECK_THROWS_AS(control::reconstruct_channel(rm.params.arrival_freqs,
                                                 br.params.departure_freqs, bad, om, 16, 16),
                    std::invalid_argument);
}

TEST_CASE("reconstruction from link estimates agrees after noiseless training")
{
    Rng chan_rng(207);
    const channel::Link br = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, chan_rng);
    const channel::Link rm = channel::synth_link(16, 32, 2, 4.0 / 16.0, 4.0 / 32.0, chan_rng);

    HybridSetup setup;
    setup.n_beams = 20;
    setup.n_active = 32;
    setup.n_rf = 32;
    SolverOptions opts;
    Rng rng(211);
    const hybrid::HybridEstimate est =
        hybrid::estimate_hybrid(br.matrix, rm.matrix, setup, 2, 0.0, rng, opts);

    PhaseControl om;
    om.omega = Vec(32);
    for (int k = 0; k < 32; k++)
        om.omega(k) = std::polar(1.0, 2.0 * M_PI * rng.uniform());

    const Mat recon = control::reconstruct_channel(est.link_rm, est.link_br, om, 16, 16, 32);
    const Mat truth = channel::cascade(rm.matrix, om, br.matrix);
    CHECK((recon - truth).norm() < 1e-3 * truth.norm());

    LinkParams none;
    CHECK_THROWS_AS(control::reconstruct_channel(none, est.link_br, om, 16, 16, 32),
                    std::invalid_argument);
}

TEST_CASE("beamformers capture the top singular pair")
{
    Rng rng(213);
    Vec u(6), v(4);
    for (int i = 0; i < 6; i++)
        u(i) = cx(rng.normal(), rng.normal());
    for (int i = 0; i < 4; i++)
        v(i) = cx(rng.normal(), rng.normal());
    u.normalize();
    v.normalize();
    const Mat h = 3.5 * u * v.adjoint();

    const auto [f, w] = control::design_beamformers(h);
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs((w.adjoint() * h * f).value()) == doctest::Approx(3.5).epsilon(1e-10));

    CHECK_THROWS_AS(control::design_beamformers(Mat::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("perfect single-path knowledge reaches the coherent ceiling")
{
    Rng rng(217);
    const channel::Link br = channel::synth_link(32, 16, 1, 0.1, 0.1, rng);
    const channel::Link rm = channel::synth_link(16, 32, 1, 0.1, 0.1, rng);
    CascadeParams cas;
    cas.delta_freqs =
        channel::angle_differences(br.params.arrival_freqs, rm.params.departure_freqs);
    cas.product_gains = channel::product_gains(rm.params.gains, br.params.gains);

    const PhaseControl om = control::design_phase(cas, 32);
    const Mat h = channel::cascade(rm.matrix, om, br.matrix);
    const auto [f, w] = control::design_beamformers(
        control::reconstruct_channel(rm.params.arrival_freqs, br.params.departure_freqs, cas,
                                     om, 16, 16));
    const double link_gain = std::norm((w.adjoint() * h * f).value());
    const double want = 16.0 * 16.0 * 32.0 * 32.0 * std::norm(cas.product_gains[0]);
    CHECK(link_gain == doctest::Approx(want).epsilon(1e-8));

    const double se = metrics::se_bound(br.matrix, rm.matrix, om, f, w, 1.0);
    CHECK(se == doctest::Approx(std::log2(1.0 + link_gain)).epsilon(1e-10));
}
