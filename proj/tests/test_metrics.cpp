#include <doctest.h>

#include "iorec/errors.hpp"
#include "iorec/metrics.hpp"
#include "oracles.hpp"

using iorec::Index;
using iorec::Matrix;
using iorec::Position;
using iorec::PositionList;

TEST_CASE("rmse is zero when truth equals the estimate") {
    const Matrix m = oracles::random_matrix(4, 4, 1);
    CHECK(iorec::rmse(m, m, iorec::all_positions(4, 4)) == 0.0);
}

TEST_CASE("rmse of a single miss is the absolute difference") {
    Matrix truth(1, 1);
    truth << 3.0;
    const PositionList omega{{0, 0}};
    CHECK(iorec::rmse(truth, Matrix::Zero(1, 1), omega) == doctest::Approx(3.0));
}

TEST_CASE("rmse matches the direct summation oracle") {
    const Matrix a = oracles::random_matrix(5, 5, 2);
    const Matrix b = oracles::random_matrix(5, 5, 3);
    const PositionList omega = iorec::all_positions(5, 5);
    CHECK(std::abs(iorec::rmse(a, b, omega) - oracles::naive_rmse(a, b, omega)) <= 1e-12);
}

TEST_CASE("rmse requires a non-empty position set and matching shapes") {
    const Matrix m = Matrix::Ones(2, 2);
    CHECK_THROWS_AS(iorec::rmse(m, m, PositionList{}), iorec::MetricError);
    CHECK_THROWS_AS(iorec::rmse(m, Matrix::Ones(2, 3), PositionList{{0, 0}}),
                    iorec::ArgumentError);
    CHECK_THROWS_AS(iorec::rmse(m, m, PositionList{{5, 0}}), iorec::ArgumentError);
}

TEST_CASE("smape examples") {
    Matrix one(1, 1);
    one << 1.0;
    const PositionList omega{{0, 0}};
    CHECK(iorec::smape(one, one, omega) == 0.0);
    CHECK(iorec::smape(one, Matrix::Zero(1, 1), omega) == doctest::Approx(100.0));
    CHECK(iorec::smape(Matrix::Zero(1, 1), Matrix::Zero(1, 1), omega) == 0.0);
}

TEST_CASE("smape stays within [0, 100] on adversarial values") {
    Matrix truth(2, 3);
    truth << 0.0, -5.0, 1e-300, 7.0, 0.0, -1e300;
    Matrix estimate(2, 3);
    estimate << 0.0, 5.0, -1e-300, 0.0, 1e300, 1e300;
    const double value = iorec::smape(truth, estimate, iorec::all_positions(2, 3));
    CHECK(value >= 0.0);
    CHECK(value <= 100.0);
}

TEST_CASE("rmse is invariant under matched permutations") {
    const Matrix a = oracles::random_matrix(6, 5, 4);
    const Matrix b = oracles::random_matrix(6, 5, 5);
    const PositionList omega{{0, 1}, {2, 3}, {5, 0}, {4, 4}};
    const double base = iorec::rmse(a, b, omega);

    // Swap rows 0 and 5, columns 1 and 4, in both matrices and the set.
    Matrix pa = a;
    Matrix pb = b;
    pa.row(0).swap(pa.row(5));
    pb.row(0).swap(pb.row(5));
    pa.col(1).swap(pa.col(4));
    pb.col(1).swap(pb.col(4));
    auto map = [](Position p) {
        if (p.row == 0) {
            p.row = 5;
        } else if (p.row == 5) {
            p.row = 0;
        }
        if (p.col == 1) {
            p.col = 4;
        } else if (p.col == 4) {
            p.col = 1;
        }
        return p;
    };
    PositionList permuted;
    for (const Position& p : omega) {
        permuted.push_back(map(p));
    }
    CHECK(iorec::rmse(pa, pb, permuted) == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("scaling both matrices scales rmse linearly and leaves smape unchanged") {
    const Matrix a = oracles::random_matrix(4, 4, 6);
    const Matrix b = oracles::random_matrix(4, 4, 7);
    const PositionList omega = iorec::all_positions(4, 4);
    CHECK(iorec::rmse(Matrix(3.0 * a), Matrix(3.0 * b), omega) ==
          doctest::Approx(3.0 * iorec::rmse(a, b, omega)).epsilon(1e-12));
    CHECK(iorec::smape(Matrix(3.0 * a), Matrix(3.0 * b), omega) ==
          doctest::Approx(iorec::smape(a, b, omega)).epsilon(1e-12));
}
