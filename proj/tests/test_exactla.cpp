#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace plectic;
using plectic::testing::Rng;

namespace {

Scalar operator""_s(const char* text, std::size_t) { return Scalar::parse(text); }

Vec vec(std::initializer_list<Scalar> entries) { return Vec(entries); }

}  // namespace

TEST_CASE("scalar arithmetic is exact field arithmetic") {
  Scalar a("1/2+3/4*i"_s), b("-2/3+1/5*i"_s);
  CHECK(a + b == "-1/6+19/20*i"_s);
  CHECK(a * b.inverse() * b == a);
  CHECK((a / b) * b == a);
  CHECK(a.conj().conj() == a);
  CHECK((a * a.conj()).is_real());
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK_THROWS_AS(Scalar(0).inverse(), std::invalid_argument);
}

TEST_CASE("scalar strings round-trip and reject junk") {
  for (const char* text : {"0", "1", "-3/7", "2*i", "-1/2*i", "5/6+7/8*i", "1-2*i"}) {
    Scalar s = Scalar::parse(text);
    CHECK(Scalar::parse(s.to_string()) == s);
  }
  CHECK(Scalar::parse("i") == Scalar::i());
  CHECK(Scalar::parse("-i") == -Scalar::i());
  CHECK(Scalar::parse("1/2+3/4*i").to_string() == "1/2+3/4*i");
  CHECK_THROWS_AS(Scalar::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("1+2+3"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("1*i+2*i"), std::invalid_argument);
}

TEST_CASE("rref canonical form of spans") {
  // (1, i) and (i, -1) span the same line.
  Subspace s = Subspace::span(2, {vec({Scalar(1), Scalar::i()}),
                                  vec({Scalar::i(), Scalar(-1)})});
  CHECK(s.dim() == 1);
  CHECK(s.basis()[0] == vec({Scalar(1), Scalar::i()}));

  CHECK(Subspace::span(3, {}).is_zero());

  Subspace full = Subspace::span(2, {vec({Scalar(0), Scalar(1)}),
                                     vec({Scalar(1), Scalar(0)})});
  CHECK(full == Subspace::full(2));
  CHECK(full.basis()[0] == vec({Scalar(1), Scalar(0)}));

  CHECK_THROWS_AS(Subspace::span(2, {Vec(3)}), std::invalid_argument);
}

TEST_CASE("rref is canonical on random equal row spaces") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = testing::pick(rng, 1, 5);
    int r = testing::pick(rng, 1, n);
    std::vector<Vec> rows;
    for (int k = 0; k < r; ++k) rows.push_back(testing::random_vector(rng, n));
    Subspace a = Subspace::span(n, rows);
    // Random invertible combinations of the same rows.
    std::vector<Vec> mixed;
    for (int k = 0; k < r + 2; ++k) {
      Vec v(n);
      for (int j = 0; j < r; ++j) {
        Scalar c = testing::small_scalar(rng);
        v = v + c * rows[j];
      }
      mixed.push_back(std::move(v));
    }
    Subspace b = Subspace::span(n, mixed);
    CHECK(a.contains(b));
    if (a.dim() == b.dim()) CHECK(a == b);
  }
}

TEST_CASE("sum and intersection") {
  Subspace a = Subspace::span(2, {vec({Scalar(1), Scalar(0)})});
  Subspace b = Subspace::span(2, {vec({Scalar(0), Scalar(1)})});
  CHECK(sum(a, b) == Subspace::full(2));
  CHECK(intersect(a, b).is_zero());
  CHECK(sum(a, a) == a);
  CHECK(intersect(a, a) == a);

  Subspace c = Subspace::span(3, {vec({Scalar(1), Scalar(1), Scalar(0)}),
                                  vec({Scalar(0), Scalar(0), Scalar(1)})});
  Subspace d = Subspace::span(3, {vec({Scalar(1), Scalar(0), Scalar(0)}),
                                  vec({Scalar(0), Scalar(1), Scalar(1)})});
  Subspace meet = intersect(c, d);
  CHECK(meet.dim() == 1);
  CHECK(meet.contains(vec({Scalar(1), Scalar(1), Scalar(1)})));

  CHECK_THROWS_AS(sum(a, Subspace::zero(3)), std::invalid_argument);
}

TEST_CASE("modular law on random subspaces") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = testing::pick(rng, 0, 5);
    auto make = [&] {
      std::vector<Vec> rows;
      for (int k = testing::pick(rng, 0, n); k > 0; --k)
        rows.push_back(testing::random_vector(rng, n));
      return Subspace::span(n, rows);
    };
    Subspace a = make(), b = make();
    CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
    CHECK(sum(a, b).contains(a));
    CHECK(a.contains(intersect(a, b)));
  }
}

TEST_CASE("quotient map and lifts") {
  Subspace a = Subspace::full(2);
  Subspace b = Subspace::span(2, {vec({Scalar(0), Scalar(1)})});
  QuotientMap q = quotient_map(a, b);
  CHECK(q.complement.size() == 1);
  CHECK(q.projection.rows() == 1);

  CHECK(quotient_map(a, a).complement.empty());

  // Projecting the complement basis and lifting back is the identity.
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = testing::pick(rng, 1, 5);
    std::vector<Vec> rows;
    for (int k = 0; k < n; ++k) rows.push_back(testing::random_vector(rng, n));
    Subspace big = Subspace::span(n, rows);
    std::vector<Vec> small_rows(big.basis().begin(),
                                big.basis().begin() + testing::pick(rng, 0, big.dim()));
    Subspace small = Subspace::span(n, small_rows);
    QuotientMap qm = quotient_map(big, small);
    CHECK(static_cast<int>(qm.complement.size()) == big.dim() - small.dim());
    for (std::size_t i = 0; i < qm.complement.size(); ++i) {
      Vec coords = qm.projection.apply(qm.complement[i]);
      for (std::size_t j = 0; j < qm.complement.size(); ++j)
        CHECK(coords[j] == (i == j ? Scalar(1) : Scalar(0)));
    }
    // Members of the small space project to zero.
    for (const Vec& r : small.basis())
      CHECK(plectic::is_zero(qm.projection.apply(r)));
  }

  CHECK_THROWS_AS(quotient_map(b, a), std::invalid_argument);
}

TEST_CASE("quotient of a two-weight structure") {
  // Full space over the line spanned by the second coordinate.
  Subspace a = Subspace::full(2);
  Subspace b = Subspace::span(2, {vec({Scalar(0), Scalar(1)})});
  QuotientMap q = quotient_map(a, b);
  CHECK(q.complement.size() == 1);
  CHECK(q.complement[0] == vec({Scalar(1), Scalar(0)}));
}

TEST_CASE("fixed spaces of anti-linear involutions") {
  // Plain conjugation on one coordinate.
  FixedSpace conj_fix = fixed_space(AntiLinearMap{Mat::identity(1)});
  CHECK(conj_fix.qdim() == 1);
  CHECK(conj_fix.complex_basis[0] == vec({Scalar(1)}));

  // Negated conjugation fixes the imaginary axis.
  Mat neg = Mat::identity(1);
  neg(0, 0) = Scalar(-1);
  FixedSpace neg_fix = fixed_space(AntiLinearMap{neg});
  CHECK(neg_fix.qdim() == 1);
  CHECK(neg_fix.complex_basis[0] == vec({Scalar::i()}));

  // Coordinate swap composed with conjugation.
  Mat swap(2, 2);
  swap(0, 1) = Scalar(1);
  swap(1, 0) = Scalar(1);
  FixedSpace swap_fix = fixed_space(AntiLinearMap{swap});
  CHECK(swap_fix.qdim() == 2);
  Subspace expected = rational_span(2, {vec({Scalar(1), Scalar(1)}),
                                        vec({Scalar::i(), -Scalar::i()})});
  CHECK(swap_fix.realified == expected);

  // Non-involutions are rejected.
  Mat two = Mat::identity(1);
  two(0, 0) = Scalar(2);
  CHECK_THROWS_AS(fixed_space(AntiLinearMap{two}), std::invalid_argument);
}

TEST_CASE("fixed space doubles back to the ambient space") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int n = testing::pick(rng, 1, 4);
    // sigma = c . conj . c^{-1} is always an involution.
    Mat c = testing::random_invertible(rng, n);
    Mat s = c * c.conj().inverse();
    AntiLinearMap tau{s};
    REQUIRE(tau.is_involution());
    FixedSpace fs = fixed_space(tau);
    CHECK(fs.qdim() == n);
    // The complex span of the fixed vectors is everything.
    Subspace span = Subspace::span(n, fs.complex_basis);
    CHECK(span.is_full());
  }
}

TEST_CASE("filtration validation and support") {
  AscFiltration w(2);
  w.set_step(-1, Subspace::zero(2));
  w.set_step(0, Subspace::full(2));
  auto rep = w.validate();
  CHECK(rep.ok);
  CHECK(w.jumps() == std::vector<int>{0});
  CHECK(w.at(-1).is_zero());
  CHECK(w.at(5).is_full());

  AscFiltration bad(2);
  bad.set_step(0, Subspace::span(2, {vec({Scalar(1), Scalar(0)})}));
  bad.set_step(1, Subspace::span(2, {vec({Scalar(0), Scalar(1)})}));
  auto bad_rep = bad.validate();
  CHECK_FALSE(bad_rep.ok);
  CHECK(bad_rep.violations.front().lower_index == 0);
  CHECK(bad_rep.violations.front().upper_index == 1);

  // Twist-style Hodge filtration: full at -n, zero above.
  int n = 3;
  DescFiltration f(1);
  f.set_step(-n, Subspace::full(1));
  f.set_step(-n + 1, Subspace::zero(1));
  CHECK(f.validate().ok);
  CHECK(f.at(-n).is_full());
  CHECK(f.at(-n + 1).is_zero());
  CHECK(f.at(-10).is_full());
}

TEST_CASE("filtration normalization and equality") {
  DescFiltration a(1), b(1);
  a.set_step(0, Subspace::full(1));
  a.set_step(1, Subspace::zero(1));
  b.set_step(0, Subspace::full(1));
  CHECK(a == b);
  a.normalize();
  CHECK(a.steps().size() == 1);

  AscFiltration x(1), y(1);
  x.set_step(-2, Subspace::zero(1));
  x.set_step(0, Subspace::full(1));
  y.set_step(0, Subspace::full(1));
  CHECK(x == y);
}

TEST_CASE("zero-dimensional ambient spaces are legal") {
  Subspace z = Subspace::zero(0);
  CHECK(z.is_full());
  CHECK(sum(z, z) == z);
  CHECK(intersect(z, z) == z);
  CHECK(quotient_map(z, z).complement.empty());
  FixedSpace fs = fixed_space(AntiLinearMap{Mat(0, 0)});
  CHECK(fs.qdim() == 0);
  AscFiltration w(0);
  CHECK(w.validate().ok);
}

TEST_CASE("kernels") {
  Mat m(2, 3);
  m(0, 0) = Scalar(1);
  m(0, 1) = Scalar(1);
  m(0, 2) = Scalar(1);
  m(1, 0) = Scalar(1);
  m(1, 1) = Scalar(2);
  m(1, 2) = Scalar(3);
  Subspace k = kernel_of(m);
  CHECK(k.dim() == 1);
  CHECK(k.contains(vec({Scalar(1), Scalar(-2), Scalar(1)})));
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = testing::pick(rng, 1, 4), cols = testing::pick(rng, 1, 4);
    Mat a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = testing::small_scalar(rng);
    Subspace ker = kernel_of(a);
    for (const Vec& v : ker.basis()) CHECK(plectic::is_zero(a.apply(v)));
    CHECK(ker.dim() == cols - a.rank());
  }
}
