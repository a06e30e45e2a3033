#include <doctest.h>

#include "prespa/hilbert.hpp"

using namespace prespa;

TEST_SUITE("hilbert") {

TEST_CASE("annihilation matrix elements") {
    const Mat a2 = annihilation(2).matrix;
    CHECK(a2(0, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(a2(0, 0)) == 0.0);
    CHECK(std::abs(a2(1, 0)) == 0.0);
    CHECK(std::abs(a2(1, 1)) == 0.0);

    const Mat a3 = annihilation(3).matrix;
    CHECK(a3(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

    const Mat a8 = annihilation(8).matrix;
    const Mat n = a8.adjoint() * a8;
    Vec five = Vec::Zero(8);
    five(5) = 1.0;
    CHECK((n * five - 5.0 * five).norm() == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(annihilation(1), std::invalid_argument);
}

TEST_CASE("commutator [a, a^dag] is identity away from the truncation edge") {
    for (int dim : {2, 5, 12}) {
        const Mat a = annihilation(dim).matrix;
        const Mat comm = a * a.adjoint() - a.adjoint() * a;
        for (int k = 0; k < dim - 1; ++k) CHECK(comm(k, k).real() == doctest::Approx(1.0));
        // the last diagonal entry carries the truncation defect
        CHECK(comm(dim - 1, dim - 1).real() == doctest::Approx(-(dim - 1.0)));
    }
}

TEST_CASE("embedding and ordering convention") {
    const ModeDims dims{4, 3, 2};
    CHECK(dims.total() == 24);
    // cavity slowest: |c,t,r> at (c*3 + t)*2 + r
    CHECK(dims.index(2, 1, 1) == 15);

    const QuantumOperator id_c = identity_op(4);
    const Mat global = embed(id_c, 0, dims).matrix;
    CHECK((global - Mat::Identity(24, 24)).norm() == doctest::Approx(0.0));

    const Mat ac = embed(annihilation(4), 0, dims).matrix;
    const Mat qt = embed(transition(0, 1, 3), 1, dims).matrix;
    CHECK((ac * qt - qt * ac).norm() == doctest::Approx(0.0));  // disjoint modes commute

    const ModeDims d10{10, 3, 2};
    const Mat num = embed(number_operator(10), 0, d10).matrix;
    const StateVector f3 = fock_state(3, 0, 0, d10);
    CHECK((num * f3.projector()).trace().real() == doctest::Approx(3.0));

    CHECK_THROWS_AS(embed(annihilation(5), 0, dims), std::invalid_argument);
}

TEST_CASE("fock states") {
    const ModeDims dims{4, 3, 2};
    const StateVector ground = fock_state(0, 0, 0, dims);
    CHECK(ground.amplitudes(0).real() == doctest::Approx(1.0));
    CHECK(ground.amplitudes.norm() == doctest::Approx(1.0));

    const StateVector f1 = fock_state(1, 2, 0, dims);
    CHECK(std::abs(f1.amplitudes.dot(f1.amplitudes)) == doctest::Approx(1.0));
    CHECK(std::abs(f1.amplitudes.dot(ground.amplitudes)) == doctest::Approx(0.0));

    CHECK_THROWS_AS(fock_state(4, 0, 0, dims), std::invalid_argument);
    CHECK_THROWS_AS(fock_state(0, 3, 0, dims), std::invalid_argument);
}

TEST_CASE("displacement operator") {
    const Mat d0 = displacement(0.0, 12).matrix;
    CHECK((d0 - Mat::Identity(12, 12)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    for (Complex alpha : {Complex(1.5, 0.0), Complex(0.3, -1.2), Complex(0.0, 2.0)}) {
        const Mat dp = displacement(alpha, 20).matrix;
        const Mat dm = displacement(-alpha, 20).matrix;
        CHECK((dp * dm - Mat::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-6);
    }

    // coherent overlap <0|D(1)|0> = e^{-1/2}, oracle value from series summation
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 40; ++k) {
        series += term;
        term *= -0.5 / double(k + 1);
    }
    const Mat d1 = displacement(1.0, 20).matrix;
    CHECK(d1(0, 0).real() == doctest::Approx(series).epsilon(1e-6));
}

TEST_CASE("state and density-matrix invariants") {
    const ModeDims d{3, 1, 1};
    Vec raw = Vec::Zero(3);
    raw(0) = 2.0;  // constructor normalizes
    CHECK(StateVector(d, raw).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(StateVector(d, Vec::Zero(3)), std::invalid_argument);

    Mat bad = Mat::Zero(3, 3);
    bad(0, 1) = 1.0;  // not hermitian
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(DensityMatrix(d, bad), std::invalid_argument);
    Mat scaled = 2.0 * Mat::Identity(3, 3) / 3.0;  // trace 2
    CHECK_THROWS_AS(DensityMatrix(d, scaled), std::invalid_argument);

    const DensityMatrix ok(d, Mat::Identity(3, 3) / 3.0);
    CHECK(ok.min_eigenvalue() == doctest::Approx(1.0 / 3.0));
}

}  // TEST_SUITE
