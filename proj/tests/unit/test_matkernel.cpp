#include <doctest.h>

#include <cmath>

#include "subdiag/error.hpp"
#include "subdiag/matkernel.hpp"
#include "subdiag/rng.hpp"

using namespace subdiag;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix D = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                        static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) D(i, i) = v, ++i;
  return D;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix M(2, 2);
  M << a, b, c, d;
  return M;
}

bool is_lower_with_positive_diagonal(const ComplexMatrix& L) {
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    if (!(L(i, i).real() > 0.0) || L(i, i).imag() != 0.0) return false;
    for (Eigen::Index j = i + 1; j < L.cols(); ++j)
      if (L(i, j) != 0.0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("herm_eig: diag(3,1)") {
  const auto eig = herm_eig(diag({3, 1}));
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(3.0));
  // Permutation up to phases.
  CHECK(std::abs(eig.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig: identity and swap") {
  const auto id = herm_eig(ComplexMatrix::Identity(2, 2));
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(id.eigenvalues(1) == doctest::Approx(1.0));
  CHECK((id.vectors.adjoint() * id.vectors - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  const auto swap = herm_eig(mat2(0, 1, 1, 0));
  CHECK(swap.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(swap.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CHECK_THROWS_AS(herm_eig(mat2(0, 1, 0, 0)), Error);
  try {
    herm_eig(mat2(0, 1, 0, 0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("herm_eig properties on random Hermitian matrices") {
  for (int t = 0; t < 200; ++t) {
    Rng rng = Rng::for_trial(21, t);
    const Eigen::Index n = 1 + t % 12;
    const ComplexMatrix G = random_gaussian_matrix(rng, n);
    const ComplexMatrix H = G + G.adjoint();
    const auto eig = herm_eig(H);
    const double scale = std::max(1.0, H.norm());
    const ComplexMatrix rebuilt = eig.vectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    REQUIRE((rebuilt - H).norm() <= 1e-12 * scale);
    REQUIRE((eig.vectors.adjoint() * eig.vectors - ComplexMatrix::Identity(n, n)).norm() <= 1e-12);
    for (Eigen::Index i = 1; i < n; ++i) REQUIRE(eig.eigenvalues(i - 1) <= eig.eigenvalues(i));
    // Trace and determinant.
    const double trace = H.trace().real();
    CHECK(std::abs(eig.eigenvalues.sum() - trace) <= 1e-10 * std::max(1.0, std::abs(trace)));
    const Complex det = H.partialPivLu().determinant();
    double prod = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) prod *= eig.eigenvalues(i);
    CHECK(std::abs(prod - det.real()) <= 1e-10 * std::max(1.0, std::abs(det)) * n);
  }
}

TEST_CASE("abs_op examples") {
  CHECK((abs_op(diag({-2, 3})) - diag({2, 3})).norm() < 1e-12);

  Rng rng(5);
  const ComplexMatrix U = random_unitary(rng, 4);
  CHECK((abs_op(U) - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);

  // X*X = diag(1, 0).
  CHECK((abs_op(mat2(0, 0, 1, 0)) - diag({1, 0})).norm() < 1e-12);
}

TEST_CASE("abs_op is psd and squares to X*X") {
  for (int t = 0; t < 200; ++t) {
    Rng rng = Rng::for_trial(8, t);
    const Eigen::Index n = 1 + t % 10;
    ComplexMatrix X = random_gaussian_matrix(rng, n);
    if (t % 3 == 0) X.col(0).setZero();  // singular inputs too
    const ComplexMatrix R = abs_op(X);
    CHECK(is_hermitian(R));
    CHECK(herm_eig(R).eigenvalues(0) >= -1e-12 * std::max(1.0, R.norm()));
    const ComplexMatrix gram = X.adjoint() * X;
    CHECK((R * R - gram).norm() <= 1e-10 * std::max(1.0, gram.norm()));
  }
}

TEST_CASE("cholesky_lower examples") {
  CHECK((cholesky_lower(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() < 1e-15);
  const double r2 = std::sqrt(2.0);
  const ComplexMatrix expected = mat2(r2, 0, 1 / r2, 1 / r2);
  CHECK((cholesky_lower(mat2(2, 1, 1, 1)) - expected).norm() < 1e-14);
  CHECK((cholesky_lower(diag({4, 9})) - diag({2, 3})).norm() < 1e-15);
}

TEST_CASE("reverse_cholesky examples") {
  CHECK((reverse_cholesky(mat2(2, 1, 1, 1)) - mat2(1, 0, 1, 1)).norm() < 1e-14);
  CHECK((reverse_cholesky(diag({4, 9})) - diag({2, 3})).norm() < 1e-15);
}

TEST_CASE("Cholesky errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ValidationError;
  };
  CHECK(code_of([] { cholesky_lower(diag({1, 0})); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { cholesky_lower(diag({1, -1})); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { reverse_cholesky(diag({0, 1})); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { reverse_cholesky(mat2(1, 2, 0, 1)); }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { cholesky_lower(ComplexMatrix::Zero(2, 3)); }) == ErrorCode::InvalidMatrix);
}

TEST_CASE("Cholesky reconstruction and flip-permutation equivalence on random SPD") {
  for (int t = 0; t < 1000; ++t) {
    Rng rng = Rng::for_trial(1234, t);
    const Eigen::Index n = 1 + t % 16;
    const ComplexMatrix P = random_spd(rng, n);
    const double scale = P.norm();

    const ComplexMatrix L = cholesky_lower(P);
    REQUIRE(is_lower_with_positive_diagonal(L));
    REQUIRE((L * L.adjoint() - P).norm() <= 1e-10 * scale);

    const ComplexMatrix R = reverse_cholesky(P);
    REQUIRE(is_lower_with_positive_diagonal(R));
    REQUIRE((R.adjoint() * R - P).norm() <= 1e-10 * scale);

    // R = J·(chol_lower(JPJ))*·J.
    const ComplexMatrix J = exchange_matrix(n);
    const ComplexMatrix flipped = J * cholesky_lower(J * P * J).adjoint() * J;
    REQUIRE((flipped - R).norm() <= 1e-10 * std::max(1.0, R.norm()));
  }
}

TEST_CASE("relative tolerances are scale invariant") {
  const ComplexMatrix P = mat2(2, 1, 1, 1);
  for (double scale : {1e-8, 1.0, 1e8}) {
    const ComplexMatrix R = reverse_cholesky(scale * P);
    CHECK((R.adjoint() * R - scale * P).norm() <= 1e-10 * scale * P.norm());
  }
}
