// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "risanm/anm.hpp"
#include "risanm/channel.hpp"
#include "risanm/rng.hpp"
#include "risanm/spectral.hpp"

using namespace risanm;
using cx = risanm::cxd;

namespace
{

Mat random_hermitian(int n, Rng& rng)
{
    Mat m(n, n);
    for (int i = 0; i < n * n; i++)
        m(i) = rng.cnormal();
    return 0.5 * (m + m.adjoint().eval());
}

double min_eig(const Mat& h)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint().eval()));
    return es.eigenvalues().minCoeff();
}

} // namespace

TEST_CASE("toeplitz_materialize small cases")
{
    ToeplitzGenerator diag2{Vec::Zero(3)};
    diag2.first_col(0) = cx(2, 0);
    CHECK((anm::toeplitz_materialize(diag2) - 2.0 * Mat::Identity(3, 3)).norm() < 1e-15);

    ToeplitzGenerator g{Vec(2)};
    g.first_col << cx(1, 0), cx(0, 1);
    Mat want(2, 2);
    want << cx(1, 0), cx(0, -1), cx(0, 1), cx(1, 0);
    CHECK((anm::toeplitz_materialize(g) - want).norm() < 1e-15);
}

TEST_CASE("steering outer products are Toeplitz and adjoint recovers them")
{
    const std::vector<double> freqs{-0.11, 0.23};
    const Mat a = channel::steering_matrix(12, freqs);
    const Mat t = a * a.adjoint(); // sum of two unit-power atoms

    const ToeplitzGenerator g = anm::toeplitz_adjoint(t);
    CHECK((anm::toeplitz_materialize(g) - t).norm() < 1e-10 * t.norm());
}

TEST_CASE("toeplitz adjoint against materialize round trip")
{
    Rng rng(3);
    Vec col(6);
    col(0) = cx(std::abs(rng.normal()), 0);
    for (int i = 1; i < 6; i++)
        col(i) = rng.cnormal();
    const ToeplitzGenerator g{col};
    const ToeplitzGenerator back = anm::toeplitz_adjoint(anm::toeplitz_materialize(g));
    CHECK((back.first_col - col).norm() < 1e-12);

    const ToeplitzGenerator id3 = anm::toeplitz_adjoint(Mat::Identity(3, 3));
    CHECK(std::abs(id3.first_col(0) - cx(1, 0)) < 1e-15);
    CHECK(std::abs(id3.first_col(1)) < 1e-15);
    CHECK(std::abs(id3.first_col(2)) < 1e-15);
}

TEST_CASE("materialize and adjoint form an adjoint pair")
{
    // <materialize(g), M> = sum_d mult(d) * conj(g_d) * adjoint(M)_d with
    // mult(0) = n and mult(d) = 2(n - d) for d > 0
    Rng rng(17);
    const int n = 7;
    Vec col(n);
    col(0) = cx(rng.normal(), 0);
    for (int i = 1; i < n; i++)
        col(i) = rng.cnormal();
    const Mat m = random_hermitian(n, rng);

    const cx lhs = (anm::toeplitz_materialize(ToeplitzGenerator{col}).adjoint() * m).trace();
    const ToeplitzGenerator am = anm::toeplitz_adjoint(m);
    cx rhs = static_cast<double>(n) * std::conj(col(0)) * am.first_col(0);
    for (int d = 1; d < n; d++)
        rhs += 2.0 * static_cast<double>(n - d) *
               (std::conj(col(d)) * am.first_col(d)).real();
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
}

TEST_CASE("psd_project clips and is idempotent and non-expansive")
{
    CHECK((anm::psd_project(Mat::Identity(4, 4)) - Mat::Identity(4, 4)).norm() < 1e-12);

    Mat ind = Mat::Zero(2, 2);
    ind(0, 0) = cx(1, 0);
    ind(1, 1) = cx(-1, 0);
    Mat want = Mat::Zero(2, 2);
    want(0, 0) = cx(1, 0);
    CHECK((anm::psd_project(ind) - want).norm() < 1e-12);

    Rng rng(23);
    for (int rep = 0; rep < 10; rep++)
    {
        const Mat h = random_hermitian(6, rng);
        const Mat p = anm::psd_project(h);
        CHECK(min_eig(p) > -1e-10);
        CHECK((anm::psd_project(p) - p).norm() < 1e-10);

        const Mat q = anm::psd_project(random_hermitian(6, rng));
        CHECK((p - q).norm() <= (h - q).norm() + 1e-10);
    }
}

TEST_CASE("tau_rule arithmetic")
{
    SolverOptions opts;
    opts.tau_scale = 1.0;
    CHECK(anm::tau_rule(0.0, 16, 32, opts) == 0.0);
    CHECK(anm::tau_rule(1.0, 16, 32, opts) ==
          doctest::Approx(std::sqrt(512.0 * std::log(512.0))).epsilon(1e-12));
    SolverOptions twice = opts;
    twice.tau_scale = 2.0;
    CHECK(anm::tau_rule(1.0, 16, 32, twice) ==
          doctest::Approx(2.0 * anm::tau_rule(1.0, 16, 32, opts)).epsilon(1e-12));
}

TEST_CASE("matrix_anm zero data gives zero estimate")
{
    SolverOptions opts;
    const AnmSolution sol =
        anm::matrix_anm(Mat::Zero(8, 8), Mat::Identity(8, 8), Mat::Identity(8, 8), 8, 8, 1.0,
                        opts);
    CHECK(sol.estimate.norm() < 1e-10);
}

TEST_CASE("matrix_anm denoises a single atom and certifies PSD")
{
    Rng rng(41);
    const int n = 16;
    LinkParams p;
    p.arrival_freqs = {0.13};
    p.departure_freqs = {-0.22};
    p.gains = {cx(1.2, -0.4)};
    const Mat h = channel::link_matrix(n, n, p);

    SolverOptions opts;
    const double tau = 1e-4 * h.norm();
    const AnmSolution sol =
        anm::matrix_anm(h, Mat::Identity(n, n), Mat::Identity(n, n), n, n, tau, opts);
    CHECK((sol.estimate - h).norm() < 1e-3 * h.norm());

    Mat block(2 * n, 2 * n);
    block.topLeftCorner(n, n) = anm::toeplitz_materialize(sol.toeplitz_left);
    block.topRightCorner(n, n) = sol.estimate;
    block.bottomLeftCorner(n, n) = sol.estimate.adjoint();
    block.bottomRightCorner(n, n) = anm::toeplitz_materialize(sol.toeplitz_right);
    CHECK(min_eig(block) > -1e-6 * block.norm());
}

TEST_CASE("vector_anm zero data and noiseless recovery")
{
    SolverOptions opts;
    const AnmSolution zero = anm::vector_anm(Vec::Zero(8), Mat::Identity(8, 8), 0.5, opts);
    CHECK(zero.estimate.norm() < 1e-10);

    const int n = 16;
    const Vec h = channel::steering_vector(n, 0.19) * cx(0.7, 0.9);
    const AnmSolution sol =
        anm::vector_anm(h, Mat::Identity(n, n), 1e-4 * h.norm(), opts);
    CHECK((sol.estimate.col(0) - h).norm() < 1e-3 * h.norm());
}

TEST_CASE("vector_anm compressive recovery of four frequencies")
{
    Rng rng(59);
    const int n = 32, rows = 24, paths = 4;
    std::vector<double> freqs{-0.35, -0.1, 0.14, 0.4};
    Vec h = Vec::Zero(n);
    for (double f : freqs)
        h += channel::steering_vector(n, f) * rng.cnormal();

    Mat phi(rows, n);
    for (int i = 0; i < rows * n; i++)
        phi(i) = rng.unit_phase();
    const Vec y = phi * h;

    SolverOptions opts;
    opts.max_iters = 20000;
    opts.tol_primal = 1e-8;
    opts.tol_dual = 1e-8;
    const AnmSolution sol = anm::vector_anm(y, phi, 1e-3 * y.norm(), opts);
    const std::vector<double> est = spectral::rootmusic(sol.toeplitz_left, paths);
    for (int l = 0; l < paths; l++)
        CHECK(std::abs(channel::wrap_freq(est[static_cast<std::size_t>(l)] -
                                          freqs[static_cast<std::size_t>(l)])) < 1e-3);
}

TEST_CASE("slotted matrix ANM matches the stacked MMV solution")
{
    Rng rng(71);
    const int n1 = 8, n2 = 10, slots = 6, m = 3;
    Mat h(n1, n2);
    for (int i = 0; i < n1 * n2; i++)
        h(i) = rng.cnormal();

    std::vector<Vec> ys;
    std::vector<Mat> ops;
    std::vector<Vec> xs;
    Mat y_all(m, slots);
    Mat left(m, n1);
    Mat x_all(n2, slots);
    for (int i = 0; i < m * n1; i++)
        left(i) = rng.cnormal();
    for (int s = 0; s < slots; s++)
    {
        Vec x(n2);
        for (int i = 0; i < n2; i++)
            x(i) = rng.cnormal();
        xs.push_back(x);
        ops.push_back(left); // shared left operator makes the two models equal
        ys.push_back(left * h * x);
        y_all.col(s) = ys.back();
        x_all.col(s) = x;
    }

    SolverOptions opts;
    opts.max_iters = 4000;
    const double tau = 0.8;
    const AnmSolution a = anm::matrix_anm(y_all, left, x_all, n1, n2, tau, opts);
    const AnmSolution b = anm::matrix_anm_slotted(ys, ops, xs, n1, n2, tau, opts);
    CHECK((a.estimate - b.estimate).norm() < 1e-6 * (a.estimate.norm() + 1e-12));
}

TEST_CASE("solver is deterministic")
{
    Rng rng(83);
    Mat y(6, 6);
    for (int i = 0; i < 36; i++)
        y(i) = rng.cnormal();
    SolverOptions opts;
    opts.max_iters = 500;
    const AnmSolution a = anm::matrix_anm(y, Mat::Identity(6, 6), Mat::Identity(6, 6), 6, 6, 0.7,
                                          opts);
    const AnmSolution b = anm::matrix_anm(y, Mat::Identity(6, 6), Mat::Identity(6, 6), 6, 6, 0.7,
                                          opts);
    CHECK((a.estimate - b.estimate).norm() == 0.0);
    CHECK(a.iterations == b.iterations);
}
