#include <doctest.h>

#include <cmath>

#include "prespa/model.hpp"

using namespace prespa;

TEST_SUITE("model") {

TEST_CASE("static hamiltonian matrix elements") {
    const SystemParams p{};
    const ModeDims dims{10, 3, 2};
    const QuantumOperator h = build_static_hamiltonian(p, dims);
    CHECK(h.is_hermitian(1e-9));

    const auto diag = [&](int c, int t, int r) { return h.matrix(dims.index(c, t, r), dims.index(c, t, r)).real(); };

    // |3,e,0>: dispersive chi_ge plus Kerr, no anharmonic offset
    CHECK(diag(3, 1, 0) ==
          doctest::Approx(-kTwoPi * 3.0 * 1.12 - kTwoPi * 0.0033 / 2.0 * 3.0 * 2.0).epsilon(1e-12));
    // |n,g,0>: Kerr only
    for (int n : {0, 1, 4, 7})
        CHECK(diag(n, 0, 0) == doctest::Approx(-kTwoPi * 0.0033 / 2.0 * n * (n - 1.0)));
    // |1,f,0>: chi_gf shift plus the anharmonic offset of the f level,
    // cross-checked against a term-by-term reconstruction
    const double expected = -kTwoPi * (p.chi_ge_mhz + p.chi_ef_mhz) * 1.0 - kTwoPi * p.alpha_q_mhz -
                            kTwoPi * 0.0033e-3 * 0.0 / 2.0;
    CHECK(diag(1, 2, 0) == doctest::Approx(expected).epsilon(1e-12));
    // |0,e,1>: reservoir dispersive shift
    CHECK(diag(0, 1, 1) == doctest::Approx(-kTwoPi * p.chi_qr_mhz));
}

TEST_CASE("static hamiltonian preserves photon number") {
    const QuantumOperator h = build_static_hamiltonian(SystemParams{}, ModeDims{6, 3, 2});
    const Mat n_op = embed(number_operator(6), 0, ModeDims{6, 3, 2}).matrix;
    CHECK((h.matrix * n_op - n_op * h.matrix).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("drive hamiltonian structure") {
    const ModeDims dims{10, 3, 2};
    DriveConfig cfg{};
    const QuantumOperator hd = build_drive_hamiltonian(cfg, dims);
    CHECK(hd.is_hermitian(1e-9));
    CHECK(hd.matrix(dims.index(1, 2, 0), dims.index(0, 0, 0)).real() ==
          doctest::Approx(kTwoPi * 0.055));
    CHECK(hd.matrix(dims.index(3, 0, 1), dims.index(3, 2, 0)).real() ==
          doctest::Approx(kTwoPi * 0.160));
    CHECK(std::abs(hd.matrix(dims.index(2, 2, 0), dims.index(1, 0, 0))) == 0.0);  // even n untargeted

    DriveConfig off{0.0, 0.0, {1, 3, 5}, 0.0};
    CHECK(build_drive_hamiltonian(off, dims).matrix.cwiseAbs().maxCoeff() == 0.0);

    DriveConfig bad{};
    bad.photon_targets = {11};
    CHECK_THROWS_AS(build_drive_hamiltonian(bad, dims), std::invalid_argument);
}

TEST_CASE("drive hamiltonian annihilates code states and preserves conversion manifolds") {
    const ModeDims dims{10, 3, 2};
    const QuantumOperator hd = build_drive_hamiltonian(DriveConfig{}, dims);
    for (int n : {1, 3, 5}) {
        const Vec code = fock_state(n, 0, 0, dims).amplitudes;
        CHECK((hd.matrix * code).norm() == doctest::Approx(0.0));
        // the three-state conversion manifold maps into itself
        std::vector<int> manifold = {dims.index(n - 1, 0, 0), dims.index(n, 2, 0),
                                     dims.index(n, 0, 1)};
        for (int col : manifold)
            for (int row = 0; row < dims.total(); ++row) {
                if (std::abs(hd.matrix(row, col)) > 0.0) {
                    const bool inside = row == manifold[0] || row == manifold[1] || row == manifold[2];
                    CHECK(inside);
                }
            }
    }
}

TEST_CASE("drive detuning lands on the intermediate manifold") {
    const ModeDims dims{10, 3, 2};
    DriveConfig cfg{};
    cfg.detuning_khz = 40.0;
    const QuantumOperator hd = build_drive_hamiltonian(cfg, dims);
    for (int n : {1, 3, 5})
        CHECK(hd.matrix(dims.index(n, 2, 0), dims.index(n, 2, 0)).real() ==
              doctest::Approx(kTwoPi * 0.040));
    CHECK(hd.matrix(dims.index(1, 0, 1), dims.index(1, 0, 1)).real() == doctest::Approx(0.0));
}

TEST_CASE("leakage extension couples code states through detuned paths") {
    const ModeDims dims{10, 3, 2};
    const SystemParams p{};
    const QuantumOperator h = build_drive_hamiltonian_with_leakage(DriveConfig{}, p, dims);
    CHECK(h.is_hermitian(1e-9));
    // |3,g,0> -> |4,f,0| with bosonic factor sqrt(4/3), nearest tone n0 = 3
    CHECK(h.matrix(dims.index(4, 2, 0), dims.index(3, 0, 0)).real() ==
          doctest::Approx(kTwoPi * 0.055 * std::sqrt(4.0 / 3.0)));
    CHECK(h.matrix(dims.index(4, 2, 0), dims.index(4, 2, 0)).real() ==
          doctest::Approx(kTwoPi * p.chi_gf_mhz()));  // (m - n0) * chi_gf with m=4, n0=3
    // final state of the leakage path stays on resonance (matched sum frequency)
    CHECK(h.matrix(dims.index(4, 0, 1), dims.index(4, 0, 1)).real() == doctest::Approx(0.0));
}

TEST_CASE("collapse operators") {
    const SystemParams p{};
    const ModeDims dims{10, 3, 2};
    const auto ops = build_collapse_ops(p, dims);
    REQUIRE(ops.size() == 5);

    // cavity jump rate 1/T1a = 7.35e-3 /us
    CHECK(std::norm(ops[0].matrix(dims.index(0, 0, 0), dims.index(1, 0, 0))) ==
          doctest::Approx(7.35e-3).epsilon(1e-3));
    // transmon decays
    CHECK(std::norm(ops[1].matrix(dims.index(0, 0, 0), dims.index(0, 1, 0))) ==
          doctest::Approx(1.0 / 50.0));
    CHECK(std::norm(ops[2].matrix(dims.index(0, 1, 0), dims.index(0, 2, 0))) ==
          doctest::Approx(1.0 / 31.0));
    // reservoir rate 2*pi*kappa_r
    CHECK(std::norm(ops[3].matrix(dims.index(0, 0, 0), dims.index(0, 0, 1))) ==
          doctest::Approx(kTwoPi * 0.58));
    // pure dephasing rate 1/53 - 1/100 = 8.87e-3 /us on q^dag q
    CHECK(std::norm(ops[4].matrix(dims.index(0, 1, 0), dims.index(0, 1, 0))) ==
          doctest::Approx(2.0 * 8.868e-3).epsilon(1e-3));

    // thermal excitation appears only when enabled
    CollapseOptions with_up{};
    with_up.gamma_up_per_us = 7e-4;
    CHECK(build_collapse_ops(p, dims, with_up).size() == 6);

    // all-infinite coherence times and no reservoir -> unitary evolution
    SystemParams ideal = p;
    const double inf = std::numeric_limits<double>::infinity();
    ideal.T1a_us = ideal.T1ge_us = ideal.T1ef_us = ideal.T2R_us = inf;
    CollapseOptions no_res{};
    no_res.reservoir_decay = false;
    CHECK(build_collapse_ops(ideal, dims, no_res).empty());
}

TEST_CASE("effective model") {
    const SystemParams p{};
    const LindbladModel m = build_effective_model(0.25, p, 10);
    REQUIRE(m.collapse_ops.size() == 2);
    const Mat& cor = m.collapse_ops[1].matrix;
    Vec two = Vec::Zero(10), three = Vec::Zero(10);
    two(2) = 1.0;
    three(3) = 1.0;
    CHECK((cor * two - std::sqrt(0.25) * three).norm() == doctest::Approx(0.0));
    CHECK((cor * three).norm() == doctest::Approx(0.0));

    // PiCor^dag PiCor = kappa_cor * projector onto even Fock states below truncation
    const Mat proj = cor.adjoint() * cor;
    for (int n = 0; n < 10; ++n)
        CHECK(proj(n, n).real() == doctest::Approx(n % 2 == 0 ? 0.25 : 0.0));

    // kappa_cor = 0.25 /us corresponds to the 4 us correction-time operating point
    CHECK(1.0 / 0.25 == doctest::Approx(4.0));

    // uncorrected and dephasing variants
    CHECK(build_effective_model(0.0, p, 10).collapse_ops.size() == 1);
    CHECK(build_effective_model(0.0, p, 10, true).collapse_ops.size() == 2);
}

TEST_CASE("parameter validation") {
    SystemParams p{};
    p.T1a_us = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    SystemParams q{};
    q.T2R_us = 150.0;  // beyond the 2*T1ge limit
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    CHECK(SystemParams{}.gamma_phi() == doctest::Approx(1.0 / 53.0 - 0.01));
    CHECK(SystemParams{}.chi_gf_mhz() == doctest::Approx(2.07));
}

}  // TEST_SUITE
