// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/SVD>

#include "risanm/channel.hpp"
#include "risanm/rng.hpp"

using namespace risanm;
using cx = risanm::cxd;

namespace
{

double wrap_dist(double a, double b)
{
    const double d = channel::wrap_freq(a - b);
    return std::abs(d);
}

} // namespace

TEST_CASE("wrap_freq maps into [-0.5, 0.5)")
{
    CHECK(channel::wrap_freq(0.0) == doctest::Approx(0.0));
    CHECK(channel::wrap_freq(0.5) == doctest::Approx(-0.5));
    CHECK(channel::wrap_freq(-0.5) == doctest::Approx(-0.5));
    CHECK(channel::wrap_freq(0.75) == doctest::Approx(-0.25));
    CHECK(channel::wrap_freq(1.25) == doctest::Approx(0.25));
    CHECK(channel::wrap_freq(-1.1) == doctest::Approx(-0.1));
    for (double f = -3.0; f < 3.0; f += 0.137)
    {
        const double w = channel::wrap_freq(f);
        CHECK(w >= -0.5);
        CHECK(w < 0.5);
    }
}

TEST_CASE("steering_vector basic values")
{
    const Vec a = channel::steering_vector(4, 0.0);
    for (int i = 0; i < 4; i++)
        CHECK(std::abs(a(i) - cx(1, 0)) < 1e-15);

    const Vec b = channel::steering_vector(2, 0.25);
    CHECK(std::abs(b(0) - cx(1, 0)) < 1e-15);
    CHECK(std::abs(b(1) - cx(0, 1)) < 1e-15);

    // quarter-wavelength progression: sin(pi/6) = 0.5 per-element phase pi/2
    const double f = std::sin(M_PI / 6.0) / 2.0;
    const Vec c = channel::steering_vector(4, f);
    const cx want[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
    for (int i = 0; i < 4; i++)
        CHECK(std::abs(c(i) - want[i]) < 1e-12);
}

TEST_CASE("steering_vector norm and first entry")
{
    Rng rng(11);
    for (int k = 0; k < 20; k++)
    {
        const int n = 2 + static_cast<int>(rng.uniform() * 30);
        const double f = rng.uniform(-0.5, 0.5);
        const Vec a = channel::steering_vector(n, f);
        CHECK(a(0) == cx(1, 0));
        CHECK(a.norm() == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-12));
    }
}

TEST_CASE("steering_matrix stacks steering vectors and has full rank")
{
    const std::vector<double> freqs{0.05, 0.05 + 4.0 / 16.0};
    const Mat a = channel::steering_matrix(16, freqs);
    REQUIRE(a.rows() == 16);
    REQUIRE(a.cols() == 2);
    for (int l = 0; l < 2; l++)
        CHECK((a.col(l) - channel::steering_vector(16, freqs[static_cast<std::size_t>(l)]))
                  .norm() < 1e-14);

    const Eigen::JacobiSVD<Mat> svd(a);
    CHECK(svd.singularValues()(1) > 1.0); // numeric rank 2
}

TEST_CASE("synth_link meets separation and rebuilds its matrix")
{
    Rng rng(101);
    for (int rep = 0; rep < 8; rep++)
    {
        const channel::Link link = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, rng);
        const auto& p = link.params;
        REQUIRE(p.paths() == 2);
        CHECK(wrap_dist(p.arrival_freqs[0], p.arrival_freqs[1]) >= 4.0 / 32.0);
        CHECK(wrap_dist(p.departure_freqs[0], p.departure_freqs[1]) >= 4.0 / 16.0);

        const Mat rebuilt = channel::link_matrix(32, 16, p);
        CHECK((rebuilt - link.matrix).norm() < 1e-12 * link.matrix.norm());
    }
}

TEST_CASE("synth_link single path is rank one with |gain| scale")
{
    Rng rng(7);
    const channel::Link link = channel::synth_link(8, 4, 1, 0.1, 0.1, rng);
    const double want = std::abs(link.params.gains[0]) * std::sqrt(8.0 * 4.0);
    CHECK(link.matrix.norm() == doctest::Approx(want).epsilon(1e-12));
    const Eigen::JacobiSVD<Mat> svd(link.matrix);
    CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
}

TEST_CASE("cascade identity and linearity in omega")
{
    PhaseControl ones{Vec::Ones(3)};
    CHECK((channel::cascade(Mat::Identity(3, 3), ones, Mat::Identity(3, 3)) -
           Mat::Identity(3, 3))
              .norm() < 1e-15);

    Rng rng(5);
    Mat h_rm(2, 3), h_br(3, 2);
    for (int i = 0; i < h_rm.size(); i++)
        h_rm(i) = rng.cnormal();
    for (int i = 0; i < h_br.size(); i++)
        h_br(i) = rng.cnormal();
    Vec w1(3), w2(3);
    for (int i = 0; i < 3; i++)
    {
        w1(i) = rng.unit_phase();
        w2(i) = rng.unit_phase();
    }
    const Mat sum = channel::cascade(h_rm, PhaseControl{w1 + w2}, h_br);
    const Mat parts = channel::cascade(h_rm, PhaseControl{w1}, h_br) +
                      channel::cascade(h_rm, PhaseControl{w2}, h_br);
    CHECK((sum - parts).norm() < 1e-12 * parts.norm());
    CHECK(channel::cascade(h_rm, PhaseControl{w1}, h_br).norm() <=
          h_rm.norm() * h_br.norm() + 1e-12);
}

TEST_CASE("single-path aligned omega scales the cascade by N_R")
{
    // one path per link, omega conjugating the RIS-side phase ramp
    const int n_ris = 16;
    LinkParams br;
    br.arrival_freqs = {0.12};
    br.departure_freqs = {-0.2};
    br.gains = {cx(1, 0)};
    LinkParams rm;
    rm.arrival_freqs = {0.3};
    rm.departure_freqs = {-0.07};
    rm.gains = {cx(1, 0)};
    const Mat h_br = channel::link_matrix(n_ris, 8, br);
    const Mat h_rm = channel::link_matrix(8, n_ris, rm);

    const double delta = channel::wrap_freq(br.arrival_freqs[0] - rm.departure_freqs[0]);
    PhaseControl omega{channel::steering_vector(n_ris, delta).conjugate()};
    const Mat big = channel::cascade(h_rm, omega, h_br);

    PhaseControl single{Vec::Ones(1)};
    const Mat h_br1 = channel::link_matrix(1, 8, {br.arrival_freqs, br.departure_freqs, br.gains});
    const Mat h_rm1 = channel::link_matrix(8, 1, {rm.arrival_freqs, rm.departure_freqs, rm.gains});
    const Mat small = channel::cascade(h_rm1, single, h_br1);
    CHECK(big.norm() == doctest::Approx(n_ris * small.norm()).epsilon(1e-10));
}

TEST_CASE("angle_differences ordering, wrap, and shift invariance")
{
    CHECK(channel::angle_differences({0.2}, {0.2}) == std::vector<double>{0.0});

    const auto d = channel::angle_differences({0.25}, {0.0});
    CHECK(d[0] == doctest::Approx(0.25));
    CHECK(std::asin(2.0 * d[0]) == doctest::Approx(M_PI / 6.0));

    // entry i = p * L_br + l is phi_br[l] - theta_rm[p]
    const auto grid = channel::angle_differences({0.1, 0.2}, {-0.1, 0.4});
    CHECK(grid[0] == doctest::Approx(0.2));                          // p=0, l=0
    CHECK(grid[1] == doctest::Approx(0.3));                          // p=0, l=1
    CHECK(grid[2] == doctest::Approx(channel::wrap_freq(-0.3)));     // p=1, l=0
    CHECK(grid[3] == doctest::Approx(channel::wrap_freq(-0.2)));     // p=1, l=1

    const auto base = channel::angle_differences({0.1, -0.3}, {0.2, 0.05});
    const auto shifted = channel::angle_differences({0.23, -0.17}, {0.33, 0.18});
    for (std::size_t i = 0; i < base.size(); i++)
        CHECK(wrap_dist(base[i], shifted[i]) < 1e-12);
}

TEST_CASE("wrapped difference keeps the steering vector exact outside asin range")
{
    // sin(phi) - sin(theta) = 1.6 escapes asin; the wrapped frequency still
    // reproduces the entrywise phase product
    const double phi = 0.45, theta = -0.35;
    const double delta = channel::angle_differences({phi}, {theta})[0];
    const Vec direct =
        channel::steering_vector(16, phi).array() * channel::steering_vector(16, theta).conjugate().array();
    CHECK((channel::steering_vector(16, delta) - direct).norm() < 1e-12);
}

TEST_CASE("product_gains kronecker order")
{
    const auto one = channel::product_gains({cx(1, 0)}, {cx(0, 2)});
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - cx(0, 2)) < 1e-15);

    const cx a(1, 1), b(2, -1), c(0, 3), d(-1, 0);
    const auto four = channel::product_gains({a, b}, {c, d});
    REQUIRE(four.size() == 4);
    CHECK(std::abs(four[0] - a * c) < 1e-15);
    CHECK(std::abs(four[1] - a * d) < 1e-15);
    CHECK(std::abs(four[2] - b * c) < 1e-15);
    CHECK(std::abs(four[3] - b * d) < 1e-15);
}

TEST_CASE("effective_g closed forms and matrix agreement")
{
    CascadeParams flat;
    flat.delta_freqs = {0.0};
    flat.product_gains = {cx(1, 0)};
    PhaseControl ones{Vec::Ones(32)};
    CHECK(std::abs(channel::effective_g(flat, ones)(0) - cx(32, 0)) < 1e-12);

    CascadeParams single;
    single.delta_freqs = {0.21};
    single.product_gains = {cx(0.5, -1.5)};
    PhaseControl aligned{channel::steering_vector(32, 0.21).conjugate()};
    CHECK(std::abs(channel::effective_g(single, aligned)(0)) ==
          doctest::Approx(32.0 * std::abs(single.product_gains[0])).epsilon(1e-12));

    // vec(G) from the factored middle product equals effective_g entrywise
    Rng rng(31);
    const channel::Link br = channel::synth_link(32, 16, 2, 4.0 / 32.0, 4.0 / 16.0, rng);
    const channel::Link rm = channel::synth_link(16, 32, 2, 4.0 / 16.0, 4.0 / 32.0, rng);
    Vec omega(32);
    for (int i = 0; i < 32; i++)
        omega(i) = rng.unit_phase();

    CascadeParams casc;
    casc.delta_freqs =
        channel::angle_differences(br.params.arrival_freqs, rm.params.departure_freqs);
    casc.product_gains = channel::product_gains(rm.params.gains, br.params.gains);
    const Vec g = channel::effective_g(casc, PhaseControl{omega});

    const Mat mid = channel::steering_matrix(32, rm.params.departure_freqs).adjoint() *
                    omega.asDiagonal() * channel::steering_matrix(32, br.params.arrival_freqs);
    for (int p = 0; p < 2; p++)
        for (int l = 0; l < 2; l++)
        {
            const cx want = rm.params.gains[static_cast<std::size_t>(p)] * mid(p, l) *
                            br.params.gains[static_cast<std::size_t>(l)];
            CHECK(std::abs(g(p * 2 + l) - want) < 1e-10);
        }
}
