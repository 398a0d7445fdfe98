// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "risanm/channel.hpp"
#include "risanm/metrics.hpp"
#include "risanm/passive.hpp"
#include "risanm/rng.hpp"

using namespace risanm;
using cx = risanm::cxd;

namespace
{

struct Scene
{
    channel::Link br;
    channel::Link rm;
};

Scene draw_scene(unsigned seed)
{
    Rng rng(seed);
    Scene s;
    s.br = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, rng);
    s.rm = channel::synth_link(16, 32, 2, 4.0 / 16.0, 4.0 / 32.0, rng);
    return s;
}

// Stage-1 truth: theta_br at the BS, phi_rm at the MS, and the mixing matrix
// G(p, l) = rho_rm[p] * rho_br[l] * omega0^T alpha(delta[p * L_br + l]).
passive::Stage1Result exact_stage1(const Scene& s, const PhaseControl& omega0)
{
    passive::Stage1Result r;
    r.theta_br = s.br.params.departure_freqs;
    r.phi_rm = s.rm.params.arrival_freqs;
    r.omega0 = omega0;
    const auto delta =
        channel::angle_differences(s.br.params.arrival_freqs, s.rm.params.departure_freqs);
    const auto rho = channel::product_gains(s.rm.params.gains, s.br.params.gains);
    const int l_br = static_cast<int>(s.br.params.paths());
    const int l_rm = static_cast<int>(s.rm.params.paths());
    r.gmix = Mat(l_rm, l_br);
    for (int p = 0; p < l_rm; p++)
        for (int l = 0; l < l_br; l++)
        {
            const int i = p * l_br + l;
            const Vec a = channel::steering_vector(32, delta[i]);
            r.gmix(p, l) = rho[i] * (omega0.omega.transpose() * a).value();
        }
    return r;
}

double freq_err(const std::vector<double>& truth, const std::vector<double>& est)
{
    double worst = 0.0;
    for (double t : truth)
    {
        double best = 1.0;
        for (double e : est)
            best = std::min(best, std::abs(channel::wrap_freq(t - e)));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("stage 1 recovers both frequency sets without noise")
{
    const Scene s = draw_scene(101);
    PassiveSetup setup;
    SolverOptions opts;
    Rng rng(7);
    const passive::Stage1Result r = passive::stage1(s.br.matrix, s.rm.matrix, setup, 2, 0.0,
                                                    rng, opts);
    CHECK(freq_err(s.br.params.departure_freqs, r.theta_br) < 1e-3);
    CHECK(freq_err(s.rm.params.arrival_freqs, r.phi_rm) < 1e-3);
    CHECK(r.uses == 16);
    CHECK(r.gmix.rows() == 2);
    CHECK(r.gmix.cols() == 2);
}

TEST_CASE("stage 1 single path")
{
    Rng rng(55);
    Scene s;
    s.br = channel::synth_link(32, 16, 1, 0.1, 0.1, rng);
    s.rm = channel::synth_link(16, 32, 1, 0.1, 0.1, rng);
    PassiveSetup setup;
    SolverOptions opts;
    Rng est_rng(9);
    const passive::Stage1Result r = passive::stage1(s.br.matrix, s.rm.matrix, setup, 1, 0.0,
                                                    est_rng, opts);
    CHECK(std::abs(channel::wrap_freq(r.theta_br[0] - s.br.params.departure_freqs[0])) < 1e-4);
    CHECK(std::abs(channel::wrap_freq(r.phi_rm[0] - s.rm.params.arrival_freqs[0])) < 1e-4);
    CHECK(r.gmix.rows() == 1);
}

TEST_CASE("stage 1 frequency supports do not depend on the phase-control draw")
{
    const Scene s = draw_scene(103);
    PassiveSetup setup;
    SolverOptions opts;
    Rng r1(21), r2(22);
    const passive::Stage1Result a = passive::stage1(s.br.matrix, s.rm.matrix, setup, 2, 0.0,
                                                    r1, opts);
    const passive::Stage1Result b = passive::stage1(s.br.matrix, s.rm.matrix, setup, 2, 0.0,
                                                    r2, opts);
    CHECK((a.omega0.omega - b.omega0.omega).norm() > 1e-3); // distinct draws
    for (std::size_t l = 0; l < 2; l++)
    {
        CHECK(std::abs(channel::wrap_freq(a.theta_br[l] - b.theta_br[l])) < 1e-3);
        CHECK(std::abs(channel::wrap_freq(a.phi_rm[l] - b.phi_rm[l])) < 1e-3);
    }
}

TEST_CASE("stage 2 on exact stage-1 parameters recovers the cascade")
{
    const Scene s = draw_scene(1029);
    PassiveSetup setup;
    SolverOptions opts;
    Rng omega_rng(31);
    PhaseControl omega0;
    omega0.omega = Vec(32);
    for (int i = 0; i < 32; i++)
        omega0.omega(i) = std::polar(1.0, 2.0 * M_PI * omega_rng.uniform());
    const passive::Stage1Result s1 = exact_stage1(s, omega0);

    // twelve compressed observations against four atoms sit near the
    // information limit, so exact recovery depends on the control draw
    Rng rng(40);
    const passive::Stage2Result r = passive::stage2(s.br.matrix, s.rm.matrix, s1, setup, 2,
                                                    0.0, rng, opts);

    const auto delta_truth =
        channel::angle_differences(s.br.params.arrival_freqs, s.rm.params.departure_freqs);
    const auto rho_truth = channel::product_gains(s.rm.params.gains, s.br.params.gains);
    REQUIRE(r.cascade.delta_freqs.size() == 4);
    CHECK(freq_err(delta_truth, r.cascade.delta_freqs) < 1e-3);
    double rho_norm2 = 0.0;
    for (const cx& g : rho_truth)
        rho_norm2 += std::norm(g);
    const double rel = metrics::mse_gains(delta_truth, rho_truth, r.cascade.delta_freqs,
                                          r.cascade.product_gains) *
                       4.0 / rho_norm2;
    CHECK(rel < 1e-4);
    CHECK(r.uses == 24);
}

TEST_CASE("stage 2 single path is near exact")
{
    Rng rng(59);
    Scene s;
    s.br = channel::synth_link(32, 16, 1, 0.1, 0.1, rng);
    s.rm = channel::synth_link(16, 32, 1, 0.1, 0.1, rng);
    PassiveSetup setup;
    SolverOptions opts;
    PhaseControl omega0;
    omega0.omega = Vec(32);
    Rng omega_rng(61);
    for (int i = 0; i < 32; i++)
        omega0.omega(i) = std::polar(1.0, 2.0 * M_PI * omega_rng.uniform());
    const passive::Stage1Result s1 = exact_stage1(s, omega0);

    Rng est_rng(63);
    const passive::Stage2Result r = passive::stage2(s.br.matrix, s.rm.matrix, s1, setup, 1,
                                                    0.0, est_rng, opts);
    const double delta_truth = channel::wrap_freq(s.br.params.arrival_freqs[0] -
                                                  s.rm.params.departure_freqs[0]);
    const cx rho_truth = s.rm.params.gains[0] * s.br.params.gains[0];
    CHECK(std::abs(channel::wrap_freq(r.cascade.delta_freqs[0] - delta_truth)) < 1e-6);
    CHECK(std::abs(r.cascade.product_gains[0] - rho_truth) < 1e-4 * std::abs(rho_truth));
}

TEST_CASE("stage 2 gains stay near zero when the channel vanishes")
{
    const Scene s = draw_scene(109);
    PassiveSetup setup;
    SolverOptions opts;
    PhaseControl omega0;
    omega0.omega = Vec::Ones(32);
    passive::Stage1Result s1 = exact_stage1(s, omega0);

    const double sigma = 0.05;
    Rng rng(67);
    const Mat zero_br = Mat::Zero(32, 16);
    const Mat zero_rm = Mat::Zero(16, 32);
    const passive::Stage2Result r = passive::stage2(zero_br, zero_rm, s1, setup, 2, sigma, rng,
                                                    opts);
    for (const cx& g : r.cascade.product_gains)
        CHECK(std::abs(g) < 10.0 * sigma / std::sqrt(static_cast<double>(setup.t_blocks)));
}

TEST_CASE("stage 2 rejects block counts below twice the atom count")
{
    const Scene s = draw_scene(111);
    PassiveSetup setup;
    setup.t_blocks = 7;
    SolverOptions opts;
    PhaseControl omega0;
    omega0.omega = Vec::Ones(32);
    const passive::Stage1Result s1 = exact_stage1(s, omega0);
    Rng rng(69);
    CHECK_THROWS_AS(passive::stage2(s.br.matrix, s.rm.matrix, s1, setup, 2, 0.0, rng, opts),
                    std::invalid_argument);
}

TEST_CASE("end-to-end passive estimation on a clean scene")
{
    // scene with all four angle differences well separated, so the twelve
    // compressed stage-2 observations identify the atoms exactly
    const Scene s = draw_scene(1029);
    PassiveSetup setup;
    SolverOptions opts;
    Rng rng(71);
    const passive::PassiveEstimate est =
        passive::estimate_passive(s.br.matrix, s.rm.matrix, setup, 2, 0.0, rng, opts);

    const auto delta_truth =
        channel::angle_differences(s.br.params.arrival_freqs, s.rm.params.departure_freqs);
    const auto rho_truth = channel::product_gains(s.rm.params.gains, s.br.params.gains);
    CHECK(metrics::mse_freqs(s.rm.params.arrival_freqs, est.phi_rm, 2) < 1e-6);
    CHECK(metrics::mse_freqs(s.br.params.departure_freqs, est.theta_br, 2) < 1e-6);
    CHECK(metrics::mse_freqs(delta_truth, est.cascade.delta_freqs, 4) < 1e-6);
    CHECK(metrics::mse_gains(delta_truth, rho_truth, est.cascade.delta_freqs,
                             est.cascade.product_gains) < 1e-6);
}

TEST_CASE("training budget identity")
{
    const Scene s = draw_scene(113);
    PassiveSetup setup;
    SolverOptions opts;
    Rng rng(73);
    const passive::PassiveEstimate est =
        passive::estimate_passive(s.br.matrix, s.rm.matrix, setup, 2, 0.0, rng, opts);
    CHECK(est.uses == metrics::overhead_passive(setup.n0, setup.m0, setup.t_blocks, 2, 2,
                                                setup.n_rf_ms));
    CHECK(est.uses == 40);
}

TEST_CASE("passive estimation is reproducible under a fixed stream")
{
    const Scene s = draw_scene(127);
    PassiveSetup setup;
    SolverOptions opts;
    Rng r1(79), r2(79);
    const passive::PassiveEstimate a =
        passive::estimate_passive(s.br.matrix, s.rm.matrix, setup, 2, 0.02, r1, opts);
    const passive::PassiveEstimate b =
        passive::estimate_passive(s.br.matrix, s.rm.matrix, setup, 2, 0.02, r2, opts);
    for (std::size_t i = 0; i < 4; i++)
    {
        CHECK(a.cascade.delta_freqs[i] == b.cascade.delta_freqs[i]);
        CHECK(a.cascade.product_gains[i] == b.cascade.product_gains[i]);
    }
}
