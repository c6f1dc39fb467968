#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "erasure_lab/errors.hpp"
#include "erasure_lab/linalg.hpp"
#include "erasure_lab/random.hpp"

using namespace erasure_lab;

namespace {

// Partial trace by explicit multi-index enumeration.
ComplexMatrix brute_partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                  const std::vector<bool>& keep) {
  const std::size_t n = dims.size();
  std::size_t kept = 1;
  for (std::size_t k = 0; k < n; ++k)
    if (keep[k]) kept *= dims[k];
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  auto digits = [&](std::size_t idx) {
    std::vector<std::size_t> d(n);
    for (std::size_t k = n; k-- > 0;) {
      d[k] = idx % dims[k];
      idx /= dims[k];
    }
    return d;
  };
  auto kept_index = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (keep[k]) idx = idx * dims[k] + d[k];
    return idx;
  };
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto dr = digits(static_cast<std::size_t>(r)), dc = digits(static_cast<std::size_t>(c));
      bool traced_equal = true;
      for (std::size_t k = 0; k < n; ++k)
        if (!keep[k] && dr[k] != dc[k]) traced_equal = false;
      if (traced_equal) out(kept_index(dr), kept_index(dc)) += m(r, c);
    }
  return out;
}

}  // namespace

TEST_CASE("tensor space bookkeeping") {
  const TensorSpace s({{"A", 2}, {"B", 3}, {"C", 4}});
  CHECK(s.dim() == 24);
  CHECK(s.index_of("C") == 2);
  CHECK(s.restrict_to({"C", "A"}).labels() == std::vector<std::string>{"A", "C"});
  CHECK_THROWS_AS(s.index_of("Z"), InputError);
  CHECK_THROWS_AS(TensorSpace({{"A", 2}, {"A", 2}}), InputError);
  CHECK_THROWS_AS(s * TensorSpace::single(2, "B"), InputError);
  CHECK((TensorSpace::single(2, "X") * TensorSpace::single(5, "Y")).dim() == 10);
}

TEST_CASE("kronecker product matches index formula") {
  Rng rng(1);
  const ComplexMatrix a = random_ginibre(2, 3, rng), b = random_ginibre(3, 2, rng);
  const ComplexMatrix k = tensor_product(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) CHECK(std::abs(k(i * 3 + p, j * 2 + q) - a(i, j) * b(p, q)) < 1e-14);
}

TEST_CASE("partial trace agrees with brute-force enumeration") {
  Rng rng(2);
  const std::vector<std::size_t> dims{2, 3, 2};
  const ComplexMatrix m = random_density_matrix(12, rng);
  for (int mask = 1; mask < 8; ++mask) {
    const std::vector<bool> keep{(mask & 4) != 0, (mask & 2) != 0, (mask & 1) != 0};
    CHECK((partial_trace(m, dims, keep) - brute_partial_trace(m, dims, keep)).norm() < 1e-13);
  }
  const auto rho = DensityOperator(TensorSpace({{"A", 2}, {"B", 3}, {"C", 2}}), m);
  const auto ac = partial_trace(rho, {"C", "A"});
  CHECK(ac.space().labels() == std::vector<std::string>{"A", "C"});
  CHECK((ac.matrix() - brute_partial_trace(m, dims, {true, false, true})).norm() < 1e-13);
}

TEST_CASE("partial trace of a product state returns the factor") {
  Rng rng(3);
  const auto a = random_density(TensorSpace::single(3, "A"), rng);
  const auto b = random_density(TensorSpace::single(2, "B"), rng);
  const auto ab = tensor_product(a, b);
  CHECK((partial_trace(ab, {"A"}).matrix() - a.matrix()).norm() < 1e-13);
  CHECK((partial_trace(ab, {"B"}).matrix() - b.matrix()).norm() < 1e-13);
}

TEST_CASE("Jacobi eigensolver agrees with a Householder-based reference") {
  Rng rng(4);
  for (std::size_t d : {1, 2, 3, 5, 9, 16}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const auto es = hermitian_eig(h);
    CHECK(es.converged);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h);
    RealVector want = ref.eigenvalues().reverse();
    CHECK((es.values - want).norm() < 1e-10);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) CHECK(es.values(i) <= es.values(i - 1));
    const ComplexMatrix v = es.vectors;
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(d, d)).norm() < 1e-10);
    CHECK((v * es.values.cast<Complex>().asDiagonal() * v.adjoint() - h).norm() < 1e-10);
  }
}

TEST_CASE("Jacobi handles degenerate and diagonal input") {
  CHECK(hermitian_eig(ComplexMatrix::Identity(4, 4)).values.isApprox(RealVector::Ones(4)));
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 3.0, 2.0;
  const auto es = hermitian_eig(d);
  CHECK(es.values(0) == doctest::Approx(3.0));
  CHECK(es.values(2) == doctest::Approx(1.0));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(bad), InputError);
}

TEST_CASE("matrix log inverts the exponential") {
  Rng rng(5);
  const ComplexMatrix h = random_hermitian(4, rng);
  const ComplexMatrix e = matrix_function(h, [](double x) { return Complex(std::exp(x)); });
  CHECK((matrix_log(e) - h).norm() < 1e-9);
}

TEST_CASE("matrix log support policies") {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  CHECK_THROWS_AS(matrix_log(p), SupportError);
  const ComplexMatrix l = matrix_log(p, LogPolicy::regularize);
  const double eps = kDefaultTolerances.log_regularization;
  CHECK(l(1, 1).real() == doctest::Approx(std::log(eps / 2)).epsilon(1e-12));
  CHECK(l(0, 0).real() == doctest::Approx(std::log(1 - eps / 2)).epsilon(1e-12));
}

TEST_CASE("density operator validation") {
  const auto q = TensorSpace::single(2);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityOperator(q, m), InputError);  // trace 2
  m *= 0.5;
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator(q, m), InputError);  // not Hermitian
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(q, neg), InputError);
  CHECK_THROWS_AS(DensityOperator(TensorSpace::single(3), ComplexMatrix::Identity(2, 2) / 2.0), InputError);
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(DensityOperator::from_pure(q, v), InputError);
  RealVector p(2);
  p << 0.3, 0.7;
  CHECK(DensityOperator::diagonal(q, p).matrix()(1, 1).real() == doctest::Approx(0.7));
}

TEST_CASE("trace distance and fidelity closed forms") {
  const auto q = TensorSpace::single(2);
  RealVector p(2), r(2);
  p << 0.2, 0.8;
  r << 0.6, 0.4;
  const auto a = DensityOperator::diagonal(q, p).matrix(), b = DensityOperator::diagonal(q, r).matrix();
  CHECK(trace_distance(a, b) == doctest::Approx(0.4).epsilon(1e-12));
  const double classical = std::pow(std::sqrt(0.2 * 0.6) + std::sqrt(0.8 * 0.4), 2);
  CHECK(fidelity(a, b) == doctest::Approx(classical).epsilon(1e-10));

  Rng rng(6);
  const ComplexVector x = random_pure(3, rng), y = random_pure(3, rng);
  const double overlap = std::norm(x.dot(y));
  CHECK(fidelity(x * x.adjoint(), y * y.adjoint()) == doctest::Approx(overlap).epsilon(1e-8));
  CHECK(trace_distance(x * x.adjoint(), y * y.adjoint()) == doctest::Approx(std::sqrt(1 - overlap)).epsilon(1e-10));
}

TEST_CASE("swap operator exchanges factors") {
  Rng rng(7);
  const ComplexVector a = random_pure(3, rng), b = random_pure(3, rng);
  CHECK((swap_operator(3) * tensor_product(a, b) - tensor_product(b, a)).norm() < 1e-14);
}
