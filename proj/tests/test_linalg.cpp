#include <doctest.h>

#include <cmath>

#include "iorec/errors.hpp"
#include "iorec/linalg.hpp"
#include "oracles.hpp"

using iorec::Index;
using iorec::Matrix;
using iorec::Vector;

TEST_CASE("svd of the identity has unit singular values") {
    const auto factors = iorec::svd(Matrix::Identity(3, 3));
    REQUIRE(factors.singular_values.size() == 3);
    for (Index i = 0; i < 3; ++i) {
        CHECK(factors.singular_values(i) == doctest::Approx(1.0));
    }
}

TEST_CASE("svd of a rank-1 outer product has one singular value ||u|| ||v||") {
    Vector u(3);
    u << 2.0, 0.0, 0.0;
    Vector v(4);
    v << 0.0, 3.0, 0.0, 0.0;
    const Matrix m = u * v.transpose();  // ||u|| = 2, ||v|| = 3
    const auto factors = iorec::svd(m);
    CHECK(factors.singular_values(0) == doctest::Approx(6.0));
    for (Index i = 1; i < factors.singular_values.size(); ++i) {
        CHECK(factors.singular_values(i) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("svd singular values match the Gram-matrix eigensolver oracle") {
    const Matrix m = oracles::random_matrix(20, 15, 101);
    const auto factors = iorec::svd(m);
    const auto expected = oracles::singular_values_via_gram(m);
    REQUIRE(factors.singular_values.size() == static_cast<Index>(expected.size()));
    for (Index i = 0; i < factors.singular_values.size(); ++i) {
        CHECK(factors.singular_values(i) ==
              doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-6));
    }
}

TEST_CASE("svd factors reconstruct the input and are orthonormal") {
    for (const auto [rows, cols, seed] :
         {std::tuple{40, 25, 7}, std::tuple{25, 40, 8}, std::tuple{300, 200, 9}}) {
        const Matrix m = oracles::random_matrix(rows, cols, static_cast<std::uint64_t>(seed));
        const auto factors = iorec::svd(m);
        CHECK((factors.reconstruct() - m).norm() <= 1e-8 * m.norm());
        const Index r = factors.singular_values.size();
        CHECK((factors.u.transpose() * factors.u - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() <=
              1e-8);
        CHECK((factors.v.transpose() * factors.v - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() <=
              1e-8);
        for (Index i = 1; i < r; ++i) {
            CHECK(factors.singular_values(i) <= factors.singular_values(i - 1));
        }
        CHECK(factors.singular_values(r - 1) >= 0.0);
    }
}

TEST_CASE("svd rejects empty and non-finite input") {
    CHECK_THROWS_AS(iorec::svd(Matrix(0, 0)), iorec::ArgumentError);
    Matrix bad = Matrix::Ones(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(iorec::svd(bad), iorec::SanitizeError);
}

TEST_CASE("soft threshold with lambda 0 returns the input") {
    const Matrix y = oracles::random_matrix(12, 9, 21);
    CHECK((iorec::soft_threshold_svd(y, 0.0) - y).norm() <= 1e-8 * y.norm());
}

TEST_CASE("soft threshold with lambda at or above sigma_1 returns zero") {
    const Matrix y = oracles::random_matrix(10, 10, 22);
    const double sigma1 = iorec::svd(y).singular_values(0);
    CHECK(iorec::soft_threshold_svd(y, sigma1).norm() == 0.0);
    CHECK(iorec::soft_threshold_svd(y, 2.0 * sigma1).norm() == 0.0);
}

TEST_CASE("soft threshold shrinks a diagonal matrix entrywise") {
    Matrix y = Matrix::Zero(2, 2);
    y(0, 0) = 5.0;
    y(1, 1) = 2.0;
    const Matrix shrunk = iorec::soft_threshold_svd(y, 3.0);
    CHECK(shrunk(0, 0) == doctest::Approx(2.0));
    CHECK(shrunk(1, 1) == doctest::Approx(0.0));
    CHECK(std::abs(shrunk(0, 1)) + std::abs(shrunk(1, 0)) <= 1e-12);
}

TEST_CASE("soft threshold rejects negative lambda") {
    CHECK_THROWS_AS(iorec::soft_threshold_svd(Matrix::Ones(2, 2), -1.0), iorec::ArgumentError);
}

TEST_CASE("soft threshold shrinkage is monotone in lambda") {
    const Matrix y = oracles::random_matrix(15, 12, 23);
    const Vector s1 = iorec::svd(iorec::soft_threshold_svd(y, 0.1)).singular_values;
    const Vector s2 = iorec::svd(iorec::soft_threshold_svd(y, 0.5)).singular_values;
    for (Index i = 0; i < s1.size(); ++i) {
        CHECK(s1(i) >= s2(i) - 1e-12);
    }
}

TEST_CASE("rank truncation at full rank has zero error") {
    const Matrix m = oracles::planted_low_rank(8, 6, 3, 31);
    const auto result = iorec::truncated_rank_k(m, 6);
    CHECK(result.rmse == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((result.approx - m).norm() <= 1e-10 * m.norm());
}

TEST_CASE("rank-0 truncation error is the scaled Frobenius norm") {
    const Matrix m = oracles::random_matrix(9, 7, 32);
    const auto result = iorec::truncated_rank_k(m, 0);
    CHECK(result.approx.norm() == 0.0);
    CHECK(result.rmse == doctest::Approx(m.norm() / std::sqrt(9.0 * 7.0)).epsilon(1e-12));
}

TEST_CASE("rank truncation error matches the elementwise Frobenius oracle") {
    const Matrix m = oracles::random_matrix(10, 8, 33);
    const auto result = iorec::truncated_rank_k(m, 3);
    double sum = 0.0;
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            const double d = m(r, c) - result.approx(r, c);
            sum += d * d;
        }
    }
    const double expected = std::sqrt(sum) / std::sqrt(10.0 * 8.0);
    CHECK(std::abs(result.rmse - expected) <= 1e-10);
}

TEST_CASE("rank truncation error is non-increasing in k") {
    const Matrix m = oracles::random_matrix(12, 10, 34);
    double previous = std::numeric_limits<double>::infinity();
    for (Index k = 0; k <= 10; ++k) {
        const double current = iorec::truncated_rank_k(m, k).rmse;
        CHECK(current <= previous + 1e-15);
        previous = current;
    }
}

TEST_CASE("rank truncation rejects k beyond the minimum dimension") {
    CHECK_THROWS_AS(iorec::truncated_rank_k(Matrix::Ones(4, 3), 4), iorec::ArgumentError);
    CHECK_THROWS_AS(iorec::truncated_rank_k(Matrix::Ones(4, 3), -1), iorec::ArgumentError);
}

TEST_CASE("effective rank uses the noise floor") {
    const Matrix m = oracles::planted_low_rank(20, 16, 3, 35);
    CHECK(iorec::effective_rank(iorec::svd(m).singular_values) == 3);
}
