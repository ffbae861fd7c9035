#include <gtest/gtest.h>

#include <vector>

#include "oracle.hpp"
#include "tropadic/monoid.hpp"

namespace tropadic {
namespace {

using testing::rand_int;
using testing::rand_rational;

ZVec zv(std::vector<long> v) { return ZVec(v.begin(), v.end()); }

Polynomial make_poly(const ToricMonoid& m,
                     std::vector<std::pair<FieldScalar, std::vector<long>>> ts) {
  Polynomial f(m);
  for (auto& [c, e] : ts) f.add_term(Term{c, zv(e)});
  return f;
}

Polynomial rand_poly(const ToricMonoid& m, int max_terms) {
  Polynomial f(m);
  int want = static_cast<int>(rand_int(0, max_terms));
  int guard = 0;
  while (f.term_count() < static_cast<size_t>(want) && guard++ < 100) {
    ZVec u(m.rank());
    for (size_t i = 0; i < m.rank(); ++i) u[i] = rand_int(-4, 4);
    if (!m.contains(u)) continue;
    f.add_term(Term{FieldScalar(rand_rational(8, 3)), u});
  }
  return f;
}

TEST(Monoid, Membership) {
  ToricMonoid half = ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}));
  EXPECT_TRUE(half.contains(zv({3, -2})));
  EXPECT_FALSE(half.contains(zv({-2, 1})));

  ToricMonoid nn2 = ToricMonoid::affine(2);
  EXPECT_TRUE(nn2.contains(zv({0, 0})));
  EXPECT_TRUE(nn2.contains(zv({4, 1})));
  EXPECT_FALSE(nn2.contains(zv({-1, 0})));

  ToricMonoid zz2 = ToricMonoid::lattice(2);
  EXPECT_TRUE(zz2.contains(zv({-9, 13})));

  EXPECT_THROW(zz2.contains(zv({1, 2, 3})), tropadic_error);
}

TEST(Monoid, GeneratingSets) {
  EXPECT_EQ(ToricMonoid::lattice(2).generating_set().size(), 4u);
  EXPECT_EQ(ToricMonoid::affine(3).generating_set().size(), 3u);
  ToricMonoid half = ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}));
  EXPECT_EQ(half.generating_set().size(), 4u);
  for (const ZVec& g : half.generating_set()) EXPECT_TRUE(half.contains(g));
}

TEST(Monoid, EqualityAndRendering) {
  ToricMonoid a = ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}));
  ToricMonoid b = ToricMonoid::cone_monoid(Cone(2, {zv({-3, -3})}));
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(a != ToricMonoid::lattice(2));
  EXPECT_TRUE(ToricMonoid::lattice(2) != ToricMonoid::affine(2));
  EXPECT_EQ(ToricMonoid::lattice(3).str(), "ZZ^3");
  EXPECT_EQ(ToricMonoid::affine(1).str(), "NN^1");
  EXPECT_EQ(a.str(), "cone{rays=[[-1,-1]]}");
}

TEST(Monoid, EffectiveSigma) {
  Cone aff = ToricMonoid::affine(2).effective_sigma();
  EXPECT_EQ(aff.rays().size(), 2u);
  EXPECT_TRUE(aff.dual_contains_z(zv({1, 2})));
  EXPECT_FALSE(aff.dual_contains_z(zv({-1, 2})));
  EXPECT_TRUE(ToricMonoid::lattice(2).effective_sigma().is_origin());
}

TEST(Term, RenderingAndProduct) {
  Term m{FieldScalar(-5), zv({5})};
  EXPECT_EQ(m.str(), "t^-5*x1^5");
  Term one{FieldScalar(0), zv({0, 0})};
  EXPECT_EQ(one.str(), "t^0");
  Term p = term_mul(Term{FieldScalar(1), zv({2, 0})},
                    Term{FieldScalar::sqrt2(), zv({-1, 3})});
  EXPECT_EQ(p.coeff, FieldScalar(1) + FieldScalar::sqrt2());
  EXPECT_EQ(p.exp, zv({1, 3}));
}

TEST(Polynomial, CanonicalForm) {
  ToricMonoid z1 = ToricMonoid::lattice(1);
  Polynomial f(z1);
  f.add_term(Term{FieldScalar(1), zv({2})});
  f.add_term(Term{FieldScalar(3), zv({2})});
  f.add_term(Term{FieldScalar(2), zv({2})});
  ASSERT_EQ(f.term_count(), 1u);
  EXPECT_EQ(f.terms().begin()->second, FieldScalar(3));
  EXPECT_EQ(f.str(), "t^3*x1^2");
  EXPECT_EQ(Polynomial::zero(z1).str(), "0");
}

TEST(Polynomial, RejectsForeignExponents) {
  Polynomial f(ToricMonoid::affine(1));
  EXPECT_THROW(f.add_term(Term{FieldScalar(0), zv({-1})}), tropadic_error);
  ToricMonoid half = ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}));
  Polynomial g(half);
  EXPECT_THROW(g.add_term(Term{FieldScalar(0), zv({-2, 1})}), tropadic_error);
}

TEST(Polynomial, AddFixtures) {
  ToricMonoid z1 = ToricMonoid::lattice(1);
  Polynomial f = make_poly(z1, {{FieldScalar(0), {0}}, {FieldScalar(1), {1}}});
  Polynomial g = make_poly(z1, {{FieldScalar(2), {0}}, {FieldScalar(0), {1}}});
  Polynomial expect =
      make_poly(z1, {{FieldScalar(2), {0}}, {FieldScalar(1), {1}}});
  EXPECT_EQ(poly_add(f, g), expect);
  EXPECT_EQ(poly_add(f, f), f);
  EXPECT_EQ(poly_add(f, Polynomial::zero(z1)), f);
  EXPECT_THROW(poly_add(f, Polynomial::zero(ToricMonoid::affine(1))),
               tropadic_error);
}

TEST(Polynomial, MulFixtures) {
  ToricMonoid z1 = ToricMonoid::lattice(1);
  Polynomial binom =
      make_poly(z1, {{FieldScalar(0), {0}}, {FieldScalar(0), {1}}});
  EXPECT_EQ(poly_mul(binom, binom),
            make_poly(z1, {{FieldScalar(0), {0}},
                           {FieldScalar(0), {1}},
                           {FieldScalar(0), {2}}}));

  Polynomial shifted =
      make_poly(z1, {{FieldScalar(1), {0}}, {FieldScalar(0), {1}}});
  EXPECT_EQ(poly_mul(shifted, shifted),
            make_poly(z1, {{FieldScalar(2), {0}},
                           {FieldScalar(1), {1}},
                           {FieldScalar(0), {2}}}));

  Polynomial x = make_poly(z1, {{FieldScalar(0), {1}}});
  Polynomial xinv = make_poly(z1, {{FieldScalar(0), {-1}}});
  EXPECT_EQ(poly_mul(x, xinv), make_poly(z1, {{FieldScalar(0), {0}}}));
}

TEST(Polynomial, SemiringLaws) {
  std::vector<ToricMonoid> monoids = {
      ToricMonoid::lattice(2), ToricMonoid::affine(2),
      ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}))};
  for (const ToricMonoid& m : monoids) {
    for (int it = 0; it < 60; ++it) {
      Polynomial f = rand_poly(m, 4), g = rand_poly(m, 4), h = rand_poly(m, 4);
      EXPECT_EQ(poly_add(f, g), poly_add(g, f));
      EXPECT_EQ(poly_mul(f, g), poly_mul(g, f));
      EXPECT_EQ(poly_add(poly_add(f, g), h), poly_add(f, poly_add(g, h)));
      EXPECT_EQ(poly_mul(poly_mul(f, g), h), poly_mul(f, poly_mul(g, h)));
      EXPECT_EQ(poly_mul(f, poly_add(g, h)),
                poly_add(poly_mul(f, g), poly_mul(f, h)));
      EXPECT_EQ(poly_add(f, f), f);
      Polynomial prod = poly_mul(f, g);
      for (const auto& [u, a] : prod.terms()) EXPECT_TRUE(m.contains(u));
    }
  }
}

// Independent convolution: collect every pairwise product, then take the
// exponentwise maximum with the test oracle's sign routine.
TEST(Polynomial, MulMatchesBruteForce) {
  ToricMonoid m = ToricMonoid::lattice(2);
  for (int it = 0; it < 100; ++it) {
    Polynomial f = rand_poly(m, 8), g = rand_poly(m, 8);
    std::map<ZVec, FieldScalar> expect;
    for (const auto& [u, a] : f.terms()) {
      for (const auto& [v, b] : g.terms()) {
        ZVec w{u[0] + v[0], u[1] + v[1]};
        FieldScalar c = a + b;
        auto it2 = expect.find(w);
        if (it2 == expect.end())
          expect.emplace(w, c);
        else if (testing::oracle_sign(c - it2->second) > 0)
          it2->second = c;
      }
    }
    Polynomial prod = poly_mul(f, g);
    ASSERT_EQ(prod.term_count(), expect.size());
    for (const auto& [u, a] : prod.terms()) {
      auto it2 = expect.find(u);
      ASSERT_NE(it2, expect.end());
      EXPECT_EQ(a, it2->second);
    }
  }
}

}  // namespace
}  // namespace tropadic
