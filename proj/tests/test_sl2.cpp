#include <catch2/catch_amalgamated.hpp>

#include <casson/sl2.hpp>

#include <cmath>
#include <random>

using namespace casson;

namespace {

Mat2 random_sl2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Mat2 upper, lower, diag;
  double a = u(rng), b = u(rng), l = std::exp(u(rng) * 0.5);
  upper << 1, a, 0, 1;
  lower << 1, 0, b, 1;
  diag << l, 0, 0, 1.0 / l;
  return upper * lower * diag;
}

Mat2 mH() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 mE() {
  Mat2 m;
  m << 0, 1, 0, 0;
  return m;
}
Mat2 mF() {
  Mat2 m;
  m << 0, 0, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("word evaluation multiplies generator images", "[sl2]") {
  std::mt19937_64 rng(401);
  Rep rep{{random_sl2(rng), random_sl2(rng)}};
  const Mat2 &g1 = rep.gens[0], &g2 = rep.gens[1];

  CHECK(evaluate_word(rep, Word()).isApprox(Mat2::Identity()));

  Word w = Word::gen(1) * Word::gen(2, -1) * Word::gen(1);
  Mat2 expect = g1 * sl2_inverse(g2) * g1;
  CHECK((evaluate_word(rep, w) - expect).cwiseAbs().maxCoeff() < 1e-12);

  Mat2 inv_prod = evaluate_word(rep, w.inverse()) * evaluate_word(rep, w);
  CHECK((inv_prod - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(evaluate_word(rep, Word::gen(3)), std::invalid_argument);
}

TEST_CASE("relator verification", "[sl2]") {
  Presentation p;
  p.gens = 2;
  p.relators = {Word::gen(1) * Word::gen(2) * Word::gen(1, -1) * Word::gen(2, -1),
                Word::gen(1).pow(3)};

  Rep trivial{{Mat2::Identity(), Mat2::Identity()}};
  CHECK(verify_relators(p, trivial, 1e-12));

  Rep flipped{{Mat2(-Mat2::Identity()), Mat2::Identity()}};
  CHECK_FALSE(verify_relators(p, flipped, 1e-12));  // x1^3 -> -Id

  Rep short_rep{{Mat2::Identity()}};
  CHECK_THROWS_AS(verify_relators(p, short_rep, 1e-12), std::invalid_argument);
}

TEST_CASE("adjoint matrix in the basis H, E, F", "[sl2]") {
  CHECK(adjoint_matrix(Mat2(Mat2::Identity())).isApprox(Mat3::Identity()));

  double l = 1.7;
  Mat2 d;
  d << l, 0, 0, 1.0 / l;
  Mat3 expect = Mat3::Zero();
  expect(0, 0) = 1.0;
  expect(1, 1) = l * l;
  expect(2, 2) = 1.0 / (l * l);
  CHECK((adjoint_matrix(d) - expect).cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937_64 rng(402);
  for (int t = 0; t < 25; ++t) {
    Mat2 g = random_sl2(rng), h = random_sl2(rng);
    Mat3 lhs = adjoint_matrix(Mat2(g * h));
    Mat3 rhs = adjoint_matrix(g) * adjoint_matrix(h);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    CHECK(std::abs(adjoint_matrix(g).determinant() - 1.0) < 1e-9);
  }
}

TEST_CASE("killing form values and invariance", "[sl2]") {
  CHECK(killing_form(mH(), mH()) == Catch::Approx(8.0));
  CHECK(killing_form(mE(), mF()) == Catch::Approx(4.0));
  CHECK(killing_form(mH(), mE()) == Catch::Approx(0.0).margin(1e-12));
  CHECK(killing_form(mE(), mE()) == Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(killing_form(Mat2(Mat2::Identity()), mH()), std::invalid_argument);

  std::mt19937_64 rng(403);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 25; ++t) {
    Mat2 g = random_sl2(rng);
    Mat2 ginv = sl2_inverse(g);
    Mat2 x = u(rng) * mH() + u(rng) * mE() + u(rng) * mF();
    Mat2 y = u(rng) * mH() + u(rng) * mE() + u(rng) * mF();
    double before = killing_form(x, y);
    double after = killing_form(Mat2(g * x * ginv), Mat2(g * y * ginv));
    CHECK(after == Catch::Approx(before).margin(1e-9 * (1.0 + std::abs(before))));
  }

  // the adjoint coordinates and the form agree: kappa in coordinates
  Mat3 k = Mat3::Zero();
  k(0, 0) = 8.0;
  k(1, 2) = 4.0;
  k(2, 1) = 4.0;
  std::uniform_real_distribution<double> v(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    Eigen::Vector3d a, b;
    a << v(rng), v(rng), v(rng);
    b << v(rng), v(rng), v(rng);
    Mat2 x = a(0) * mH() + a(1) * mE() + a(2) * mF();
    Mat2 y = b(0) * mH() + b(1) * mE() + b(2) * mF();
    CHECK(killing_form(x, y) == Catch::Approx(a.dot(k * b)).margin(1e-10));
  }
}

TEST_CASE("projective base point image", "[sl2]") {
  CHECK(mobius_infinity(Mat2(Mat2::Identity())) == 0.0);

  Mat2 s;
  s << 0, -1, 1, 0;
  CHECK(mobius_infinity(s) == 0.0);  // d = 0 branch: a/c

  Mat2 p;
  p << 1, 1, 0, 1;
  CHECK(mobius_infinity(p) == 1.0);

  Mat2 d;
  d << 2, 0, 0, 0.5;
  CHECK(mobius_infinity(d) == 0.0);

  Mat2 g;
  g << 3, 2, 4, 3;  // det 1
  CHECK(mobius_infinity(g) == Catch::Approx(2.0 / 3.0));
}

TEST_CASE("density check", "[sl2]") {
  CHECK_THROWS_AS(zariski_dense_check({}, 1e-9), std::invalid_argument);

  Mat2 id = Mat2::Identity();
  CHECK_FALSE(zariski_dense_check({id}, 1e-9));

  Mat2 hyp;
  hyp << 2, 0, 0, 0.5;
  CHECK_FALSE(zariski_dense_check({hyp}, 1e-9));  // fixed axis survives

  Mat2 rot;
  double th = 0.7;
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK_FALSE(zariski_dense_check({rot}, 1e-9));  // no infinite-order witness

  Mat2 hyp2;
  hyp2 << 1, 1, 1, 2;
  CHECK(zariski_dense_check({hyp, hyp2}, 1e-9));

  Mat2 upper, lower;
  upper << 1, 1, 0, 1;
  lower << 1, 0, 1, 1;
  CHECK(zariski_dense_check({upper, lower}, 1e-9));
  // two parabolics around the same fixed point are not dense
  Mat2 upper2;
  upper2 << 1, 2, 0, 1;
  CHECK_FALSE(zariski_dense_check({upper, upper2}, 1e-9));

  // conjugation invariance
  std::mt19937_64 rng(404);
  for (int t = 0; t < 10; ++t) {
    Mat2 g = random_sl2(rng);
    Mat2 ginv = sl2_inverse(g);
    CHECK(zariski_dense_check({Mat2(g * hyp * ginv), Mat2(g * hyp2 * ginv)}, 1e-9));
    CHECK_FALSE(zariski_dense_check({Mat2(g * hyp * ginv)}, 1e-9));
  }
}
