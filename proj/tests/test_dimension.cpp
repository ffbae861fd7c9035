#include <gtest/gtest.h>

#include <utility>
#include <vector>

#include "oracle.hpp"
#include "tropadic/dimension.hpp"
#include "tropadic/spectrum.hpp"

namespace tropadic {
namespace {

using testing::rand_int;
using testing::rand_rational;
using testing::rand_scalar;

ZVec zv(std::vector<long> v) { return ZVec(v.begin(), v.end()); }

ExtScalar bot() { return ExtScalar::bottom(); }

ExtScalar fin(const FieldScalar& x) { return ExtScalar(x); }
ExtScalar fin(long x) { return ExtScalar(FieldScalar(x)); }

PrimeCongruence mk(const ToricMonoid& m,
                   std::vector<std::vector<ExtScalar>> rows,
                   CoefficientGroup gamma = CoefficientGroup::rationals()) {
  return PrimeCongruence(m, std::move(gamma), DefiningMatrix(std::move(rows)));
}

ToricMonoid half_plane() {
  return ToricMonoid::cone_monoid(Cone(2, {zv({-1, -1})}));
}

PrimeCongruence rand_cont_lattice_prime(size_t n, size_t max_height) {
  ToricMonoid m = ToricMonoid::lattice(n);
  for (;;) {
    size_t k = static_cast<size_t>(rand_int(1, static_cast<long>(max_height)));
    std::vector<std::vector<ExtScalar>> rows(
        k, std::vector<ExtScalar>(n + 1, fin(0)));
    for (auto& r : rows)
      for (size_t j = 0; j <= n; ++j) r[j] = fin(rand_scalar(true));
    if (rows[0][0].value().sign() <= 0) continue;
    PrimeCongruence p(m,
                      rand_int(0, 1) ? CoefficientGroup::rationals()
                                     : CoefficientGroup::span(
                                           {FieldScalar(1),
                                            FieldScalar::sqrt2()}),
                      DefiningMatrix(std::move(rows)));
    if (in_cont(p)) return p;
  }
}

bool strictly_contained(const PrimeCongruence& fine,
                        const PrimeCongruence& coarse) {
  return contains(fine, coarse).value && !contains(coarse, fine).value;
}

TEST(QuotientRank, Fixtures) {
  ToricMonoid zz1 = ToricMonoid::lattice(1);
  EXPECT_EQ(quotient_rank(mk(zz1, {{fin(1), fin(FieldScalar::sqrt2())}})), 1);

  ToricMonoid zz2 = ToricMonoid::lattice(2);
  EXPECT_EQ(quotient_rank(mk(
                zz2, {{fin(1), fin(FieldScalar::sqrt2()),
                       fin(FieldScalar::sqrt3())}})),
            2);

  EXPECT_EQ(quotient_rank(mk(zz2, {{fin(1), fin(2), fin(3)}})), 0);

  // Everything in Gamma's span collapses; a full Gamma kills all columns.
  EXPECT_EQ(quotient_rank(PrimeCongruence(
                zz2, CoefficientGroup::full(),
                DefiningMatrix({{fin(1), fin(FieldScalar::sqrt2()),
                                 fin(FieldScalar::sqrt3())}}))),
            0);
}

TEST(QuotientRank, Preconditions) {
  ToricMonoid zz1 = ToricMonoid::lattice(1);
  try {
    quotient_rank(mk(zz1, {{fin(0), fin(1)}, {fin(1), fin(0)}}));
    FAIL() << "quotient rank outside Cont";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::not_in_cont_interior);
  }
  ToricMonoid nn1 = ToricMonoid::affine(1);
  try {
    quotient_rank(mk(nn1, {{fin(1), bot()}}));
    FAIL() << "quotient rank with nontrivial ideal-kernel";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::not_in_cont_interior);
  }
}

TEST(QuotientRank, RepresentationInvariance) {
  for (int it = 0; it < 40; ++it) {
    PrimeCongruence p = rand_cont_lattice_prime(2, 3);
    std::vector<std::vector<ExtScalar>> rows = p.matrix().rows();
    // Positive rescaling and downward row additions define the same prime.
    for (size_t i = 0; i < rows.size(); ++i) {
      FieldScalar scale(rand_rational(4, 2));
      if ((scale * scale).sign() == 0) scale = FieldScalar(1);
      scale = scale * scale + FieldScalar(1);
      for (auto& x : rows[i]) x = fin(x.value() * scale);
      if (i > 0) {
        FieldScalar lambda(rand_rational(3, 2));
        for (size_t j = 0; j < rows[i].size(); ++j)
          rows[i][j] =
              fin(rows[i][j].value() + lambda * rows[i - 1][j].value());
      }
    }
    PrimeCongruence p2(p.monoid(), p.gamma(), DefiningMatrix(std::move(rows)));
    ASSERT_TRUE(contains(p, p2).value && contains(p2, p).value);
    EXPECT_EQ(quotient_rank(p), quotient_rank(p2));
  }
}

TEST(DimBase, Fixtures) {
  EXPECT_EQ(dim_base(ToricMonoid::lattice(2)), 2);
  EXPECT_EQ(dim_base(ToricMonoid::affine(1)), 1);
  EXPECT_EQ(dim_base(ToricMonoid::cone_monoid(
                Cone(3, {zv({-1, -1, -1})}))),
            3);
}

TEST(Height, Fixtures) {
  ToricMonoid zz1 = ToricMonoid::lattice(1);
  EXPECT_EQ(height(mk(zz1, {{fin(1), fin(FieldScalar::sqrt2())}})), 0);
  EXPECT_EQ(height(mk(zz1, {{fin(1), fin(0)}})), 1);

  FieldScalar gap = FieldScalar::sqrt3() - FieldScalar::sqrt2();
  EXPECT_EQ(height(mk(half_plane(), {{fin(1), fin(0), fin(gap)}})), 1);
}

TEST(Height, KernelRankIdentity) {
  for (int it = 0; it < 60; ++it) {
    size_t n = static_cast<size_t>(rand_int(1, 3));
    PrimeCongruence p = rand_cont_lattice_prime(n, 3);
    int kr = static_cast<int>(rank(kernel_exponent_basis(p)));
    EXPECT_EQ(kr + quotient_rank(p), static_cast<int>(n));
    EXPECT_EQ(height(p), kr);
  }
}

TEST(DimTop, BoundsFixtures) {
  PrimeCongruence p = mk(half_plane(), {{fin(1), fin(FieldScalar::sqrt2()),
                                         fin(FieldScalar::sqrt3())}});
  DimReport r = dim_top_report(p);
  EXPECT_EQ(r.dim_base, 2);
  EXPECT_EQ(r.q_rank, 2);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.reason, DimExactness::kBoundsOnly);
  EXPECT_EQ(r.dim_top_lower, 0);
  EXPECT_EQ(r.dim_top_upper, 2);
  // The true value for this prime is 1, inside the sandwich.
  EXPECT_LE(r.dim_top_lower, 1);
  EXPECT_GE(r.dim_top_upper, 1);

  ToricMonoid ray3 = ToricMonoid::cone_monoid(Cone(3, {zv({-1, -1, -1})}));
  PrimeCongruence p3 =
      mk(ray3, {{fin(1), fin(FieldScalar::sqrt2()), fin(FieldScalar::sqrt2()),
                 fin(FieldScalar::sqrt3())}});
  DimReport r3 = dim_top_report(p3);
  EXPECT_EQ(r3.dim_base, 3);
  EXPECT_EQ(r3.q_rank, 2);
  EXPECT_FALSE(r3.exact);
  EXPECT_EQ(r3.dim_top_lower, 1);
  EXPECT_EQ(r3.dim_top_upper, 3);
  EXPECT_LE(r3.dim_top_lower, 2);
  EXPECT_GE(r3.dim_top_upper, 2);

  // The height-1 witness the sandwich rests on.
  FieldScalar gap = FieldScalar::sqrt3() - FieldScalar::sqrt2();
  EXPECT_EQ(height(mk(ray3, {{fin(1), fin(0), fin(0), fin(gap)}})), 2);
}

TEST(DimTop, ExactCases) {
  ToricMonoid zz2 = ToricMonoid::lattice(2);
  PrimeCongruence full_gamma(
      zz2, CoefficientGroup::full(),
      DefiningMatrix({{fin(1), fin(FieldScalar::sqrt2()),
                       fin(FieldScalar::sqrt3())}}));
  DimReport rt = dim_top_report(full_gamma);
  EXPECT_TRUE(rt.exact);
  EXPECT_EQ(rt.reason, DimExactness::kTCoeffs);
  EXPECT_EQ(rt.dim_top_lower, 2);
  EXPECT_EQ(rt.dim_top_upper, 2);

  ToricMonoid nn1 = ToricMonoid::affine(1);
  DimReport ra = dim_top_report(mk(nn1, {{fin(1), fin(1)}}));
  EXPECT_TRUE(ra.exact);
  EXPECT_EQ(ra.reason, DimExactness::kFullDimCone);
  EXPECT_EQ(ra.dim_top_lower, 1);
  EXPECT_EQ(ra.dim_top_upper, 1);

  ToricMonoid quad = ToricMonoid::cone_monoid(
      Cone(2, {zv({-1, 0}), zv({0, -1})}));
  DimReport rq = dim_top_report(
      mk(quad, {{fin(1), fin(FieldScalar::sqrt2()), fin(1)}}));
  EXPECT_TRUE(rq.exact);
  EXPECT_EQ(rq.reason, DimExactness::kFullDimCone);
  EXPECT_EQ(rq.dim_top_lower, 2);
  EXPECT_EQ(rq.dim_top_upper, 2);

  // A ray in the plane is not full dimensional, so bounds only.
  DimReport rr = dim_top_report(
      mk(half_plane(), {{fin(1), fin(FieldScalar::sqrt2()), fin(1)}}));
  EXPECT_FALSE(rr.exact);
}

TEST(ExtendChain, Fixtures) {
  ToricMonoid zz1 = ToricMonoid::lattice(1);
  PrimeCongruence p = mk(zz1, {{fin(1), fin(0)}});
  PrimeCongruence ext = extend_chain(p, {mpq_class(1)});
  ASSERT_EQ(ext.height(), 2u);
  EXPECT_TRUE(ext.matrix().at(1, 0).value() == FieldScalar(0));
  EXPECT_TRUE(ext.matrix().at(1, 1).value() == FieldScalar(1));
  EXPECT_TRUE(strictly_contained(ext, p));
  EXPECT_EQ(quotient_rank(ext), quotient_rank(p) + 1);
  EXPECT_EQ(height(ext), height(p) - 1);

  // With full coefficients the irrational row still leaves a kernel to cut.
  ToricMonoid zz2 = ToricMonoid::lattice(2);
  PrimeCongruence q(zz2, CoefficientGroup::full(),
                    DefiningMatrix({{fin(1), fin(FieldScalar::sqrt2()),
                                     fin(FieldScalar::sqrt3())}}));
  PrimeCongruence qext = extend_chain(q, {1, 0});
  ASSERT_EQ(qext.height(), 2u);
  EXPECT_TRUE(qext.matrix().at(1, 1).value() == FieldScalar(1));
  EXPECT_TRUE(strictly_contained(qext, q));
}

TEST(ExtendChain, Errors) {
  ToricMonoid zz1 = ToricMonoid::lattice(1);
  ToricMonoid zz2 = ToricMonoid::lattice(2);
  PrimeCongruence p = mk(zz1, {{fin(1), fin(0)}});
  try {
    extend_chain(p, {0});
    FAIL() << "zero covector accepted";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::w_perpendicular);
  }

  // Over Q coefficients this prime has height 0: no covector works.
  PrimeCongruence rigid = mk(zz2, {{fin(1), fin(FieldScalar::sqrt2()),
                                    fin(FieldScalar::sqrt3())}});
  try {
    extend_chain(rigid, {1, 0});
    FAIL() << "chain step below a height-0 prime";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::w_perpendicular);
  }

  try {
    extend_chain(mk(ToricMonoid::affine(1), {{fin(1), fin(1)}}), {1});
    FAIL() << "chain step over a non-lattice monoid";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::monoid_mismatch);
  }

  try {
    extend_chain(mk(zz1, {{fin(0), fin(1)}, {fin(1), fin(0)}}), {1});
    FAIL() << "chain step outside Cont";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::not_in_cont_interior);
  }

  try {
    extend_chain(p, {1, 1});
    FAIL() << "covector of the wrong rank accepted";
  } catch (const tropadic_error& e) {
    EXPECT_EQ(e.code(), errc::dimension_mismatch);
  }
}

TEST(Chain, BuildMaximalFixtures) {
  ToricMonoid zz2 = ToricMonoid::lattice(2);
  PrimeCongruence p = mk(zz2, {{fin(1), fin(0), fin(0)}});
  std::vector<PrimeCongruence> chain = build_maximal_chain(p);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_TRUE(chain[1].matrix().at(1, 1).value() == FieldScalar(1));
  EXPECT_TRUE(chain[2].matrix().at(2, 2).value() == FieldScalar(1));

  ToricMonoid zz1 = ToricMonoid::lattice(1);
  EXPECT_EQ(build_maximal_chain(
                mk(zz1, {{fin(1), fin(FieldScalar::sqrt2())}}))
                .size(),
            1u);
  EXPECT_EQ(build_maximal_chain(mk(zz1, {{fin(1), fin(0)}})).size(), 2u);
}

TEST(Chain, CertifiesHeightOnRandomPrimes) {
  for (int it = 0; it < 30; ++it) {
    size_t n = static_cast<size_t>(rand_int(1, 3));
    PrimeCongruence p = rand_cont_lattice_prime(n, 2);
    std::vector<PrimeCongruence> chain = build_maximal_chain(p);
    ASSERT_EQ(static_cast<int>(chain.size()), height(p) + 1);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      EXPECT_TRUE(strictly_contained(chain[i + 1], chain[i]));
      EXPECT_EQ(height(chain[i + 1]), height(chain[i]) - 1);
    }
    // Every link extends to a prime of Cnvg_P, certifying the lower
    // dimension bound constructively.
    DimReport r = dim_top_report(p);
    for (const PrimeCongruence& link : chain)
      EXPECT_TRUE(extends_to_cnvg(link, p));
    EXPECT_LE(r.dim_top_lower, static_cast<int>(chain.size()) - 1);
    EXPECT_GE(r.dim_top_upper, static_cast<int>(chain.size()) - 1);
  }
}

}  // namespace
}  // namespace tropadic
