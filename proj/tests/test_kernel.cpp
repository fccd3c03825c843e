#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "homdens/kernel.hpp"

using namespace homdens;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("from_matrix and edge_density") {
  CHECK(edge_density(from_matrix_d(MatrixXd::Ones(2, 2))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(edge_density(from_matrix_d(MatrixXd::Identity(2, 2))) ==
        doctest::Approx(0.5).epsilon(1e-14));

  MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  VectorXd w(2);
  w << 1.0 / 3.0, 2.0 / 3.0;
  CHECK(edge_density(from_matrix_d(swap, w)) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));

  MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(from_matrix_d(asym), std::invalid_argument);
  MatrixXd neg(2, 2);
  neg << 1, -1, -1, 1;
  CHECK_THROWS_AS(from_matrix_d(neg), std::invalid_argument);
  VectorXd badw(2);
  badw << 0.2, 0.3;
  CHECK_THROWS_AS(from_matrix_d(MatrixXd::Ones(2, 2), badw), std::invalid_argument);
}

TEST_CASE("permutation kernel") {
  const auto g = permutation_kernel(1, 1);
  REQUIRE(g.cells() == 3);
  MatrixXd expect(3, 3);
  expect << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((g.values - expect).norm() == 0.0);
  CHECK(edge_density(g) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  CHECK(permutation_kernel(2, 1).values.trace() == 2.0);
  CHECK(permutation_kernel(2, 1).cells() == 4);

  // a + b eigenvalues at +1/k and b at -1/k
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const int k = a + 2 * b;
      const auto lambda = weighted_spectrum(permutation_kernel(a, b));
      int plus = 0, minus = 0;
      for (int i = 0; i < lambda.size(); ++i) {
        if (std::abs(lambda(i) - 1.0 / k) < 1e-12) ++plus;
        if (std::abs(lambda(i) + 1.0 / k) < 1e-12) ++minus;
      }
      CHECK(plus == a + b);
      CHECK(minus == b);
    }

  CHECK_THROWS_AS(permutation_kernel(0, 1), std::invalid_argument);
}

TEST_CASE("gram") {
  const auto gid = gram(make_rect_d(MatrixXd::Identity(2, 2)));
  CHECK((gid.values - 0.5 * MatrixXd::Identity(2, 2)).norm() < 1e-15);

  const auto gones = gram(make_rect_d(MatrixXd::Ones(2, 2)));
  CHECK((gones.values - MatrixXd::Ones(2, 2)).norm() < 1e-15);

  MatrixXd hs(2, 2);
  hs << 1, -1, 1, 1;
  const auto gsigned = gram(make_rect_d(hs));
  CHECK((gsigned.values - MatrixXd::Identity(2, 2)).norm() < 1e-15);

  MatrixXd hneg(2, 2);
  hneg << 1, -1, -1, 1;
  CHECK_THROWS_AS(gram(make_rect_d(hneg)), std::invalid_argument);

  // gram results are PSD for random signed h
  int accepted = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Rng rng(1000 + trial);
    const int n = rng.uniform_int(1, 5), m = rng.uniform_int(1, 5);
    MatrixXd H(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) H(i, j) = rng.uniform(-1.0, 1.0);
    StepKernel g;
    try {
      g = gram(make_rect_d(H));
    } catch (const std::invalid_argument&) {
      continue;  // negative Gram entry: legitimately rejected
    }
    ++accepted;
    const auto lambda = weighted_spectrum(g);
    CHECK(lambda(lambda.size() - 1) >= -1e-10);
  }
  CHECK(accepted > 0);
}

TEST_CASE("classify") {
  const auto swap = classify(permutation_kernel(1, 1));
  CHECK(swap.status == SpectralStatus::SymNonneg);
  CHECK(!swap.doublyNonnegative());
  REQUIRE(swap.eigenvalues.size() == 3);
  CHECK(swap.eigenvalues(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(swap.eigenvalues(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(swap.eigenvalues(2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

  const auto ident = classify(from_matrix_d(MatrixXd::Identity(3, 3)));
  CHECK(ident.doublyNonnegative());
  REQUIRE(ident.certifiedCP());
  CHECK(ident.cpResidual <= 1e-9);

  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_rect_kernel(4, 3, 90 + trial);
    const auto g = gram(h);
    const auto cls = classify(g);
    CHECK(cls.doublyNonnegative());
    REQUIRE(cls.certifiedCP());
    const double scale = std::max(1.0, g.values.norm());
    CHECK(cls.cpResidual <= 1e-9 * scale);
    const auto& B = *cls.cpFactor;
    CHECK(B.minCoeff() >= 0.0);
    CHECK((g.values - B * B.transpose()).norm() <= 1e-9 * scale);
  }
}

TEST_CASE("random kernels") {
  const auto cp = random_kernel(KernelKind::CompletelyPositive, 4, 3, 7);
  CHECK(classify(cp).doublyNonnegative());

  const auto dnn = random_kernel(KernelKind::DoublyNonneg, 5, 5, 1);
  CHECK(dnn.values.minCoeff() >= 0.0);
  const auto lambda = weighted_spectrum(dnn);
  CHECK(lambda(lambda.size() - 1) >= -1e-10);

  const auto again = random_kernel(KernelKind::DoublyNonneg, 5, 5, 1);
  CHECK((dnn.values - again.values).norm() == 0.0);

  const auto sym = random_kernel(KernelKind::SymNonneg, 6, 6, 3);
  CHECK(sym.values.minCoeff() >= 0.0);
  CHECK((sym.values - sym.values.transpose()).norm() == 0.0);
}

TEST_CASE("symmetrize") {
  const auto one = make_rect_d(MatrixXd::Ones(1, 1));
  const auto h1 = symmetrize(one);
  MatrixXd expect(2, 2);
  expect << 0, 1, 1, 0;
  CHECK((h1.values - expect).norm() == 0.0);
  CHECK(edge_density(h1) == doctest::Approx(0.5).epsilon(1e-14));

  // halves the integral in general
  const auto h = random_rect_kernel(3, 3, 5);
  CHECK(edge_density(symmetrize(h)) ==
        doctest::Approx(0.5 * edge_density(h)).epsilon(1e-13));

  // diagonal h: spectrum symmetric about zero
  MatrixXd d = MatrixXd::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.9;
  const auto lambda = weighted_spectrum(symmetrize(make_rect_d(d)));
  for (int i = 0; i < lambda.size(); ++i)
    CHECK(lambda(i) == doctest::Approx(-lambda(lambda.size() - 1 - i)).epsilon(1e-12));

  CHECK_THROWS_AS(symmetrize(random_rect_kernel(2, 3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(symmetrize(random_rect_kernel(2, 2, 1, true)), std::invalid_argument);
}

TEST_CASE("tensor_power") {
  const auto h = random_rect_kernel(2, 3, 11);
  const auto h1 = tensor_power(h, 1);
  CHECK((h1.values - h.values).norm() == 0.0);

  const auto h2 = tensor_power(h, 2);
  CHECK(h2.rows() == 4);
  CHECK(h2.cols() == 9);
  CHECK(edge_density(h2) == doctest::Approx(std::pow(edge_density(h), 2)).epsilon(1e-12));
  const auto h3 = tensor_power(h, 3);
  CHECK(edge_density(h3) == doctest::Approx(std::pow(edge_density(h), 3)).epsilon(1e-12));

  CHECK_THROWS_AS(tensor_power(h, 20), TooLarge);
}

TEST_CASE("schatten density") {
  const auto ident = from_matrix_d(MatrixXd::Identity(2, 2));
  CHECK(schatten_density(ident, 6) == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  const double c6 = std::pow(schatten_density(ident, 6), 1.0 / 6.0);
  const double c8 = std::pow(schatten_density(ident, 8), 1.0 / 8.0);
  CHECK(c6 == doctest::Approx(std::pow(2.0, -5.0 / 6.0)).epsilon(1e-13));
  CHECK(c8 == doctest::Approx(std::pow(2.0, -7.0 / 8.0)).epsilon(1e-13));
  CHECK(c6 > c8);

  for (int m = 2; m <= 8; ++m)
    CHECK(schatten_density(from_matrix_d(MatrixXd::Ones(3, 3)), m) ==
          doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(schatten_density(ident, 1), std::invalid_argument);
}

TEST_CASE("refinement invariance") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(40 + trial);
    const auto g = random_kernel(KernelKind::DoublyNonneg, rng.uniform_int(2, 4), 4,
                                 200 + trial);
    const int cell = rng.uniform_int(0, g.cells() - 1);
    const auto split = refine_split(g, cell, rng.uniform(0.1, 0.9));
    CHECK(split.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(edge_density(split) == doctest::Approx(edge_density(g)).epsilon(1e-12));

    // nonzero spectrum is preserved; one zero eigenvalue is appended
    auto a = weighted_spectrum(g);
    auto b = weighted_spectrum(split);
    std::vector<double> nza, nzb;
    for (int i = 0; i < a.size(); ++i)
      if (std::abs(a(i)) > 1e-9) nza.push_back(a(i));
    for (int i = 0; i < b.size(); ++i)
      if (std::abs(b(i)) > 1e-9) nzb.push_back(b(i));
    std::sort(nza.begin(), nza.end());
    std::sort(nzb.begin(), nzb.end());
    REQUIRE(nza.size() == nzb.size());
    for (std::size_t i = 0; i < nza.size(); ++i)
      CHECK(nzb[i] == doctest::Approx(nza[i]).epsilon(1e-9));
  }
}

TEST_CASE("tensor kernels") {
  const auto h = random_rect_kernel(3, 2, 21);
  const auto t3 = product_tensor(h, 3);
  CHECK(t3.arity == 3);
  CHECK(t3.cells == 3);
  const double direct = [&] {
    double sum = 0;
    for (int y = 0; y < 2; ++y)
      sum += h.colWeights(y) * h.values(0, y) * h.values(2, y) * h.values(1, y);
    return sum;
  }();
  CHECK(t3.at({0, 1, 2}) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(t3.at({2, 0, 1}) == doctest::Approx(direct).epsilon(1e-14));

  std::vector<double> bad = {0.0, 1.0, 2.0, 0.0};  // not symmetric
  CHECK_THROWS_AS(make_tensor<double>(2, 2, bad, Eigen::Vector2d(0.5, 0.5)),
                  std::invalid_argument);
}
