#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "tropadic/cone.hpp"
#include "tropadic/lp.hpp"

namespace tropadic {
namespace {

ZVec zv(std::vector<long> v) { return ZVec(v.begin(), v.end()); }

ZMat zm(std::vector<std::vector<long>> rows) {
  ZMat out;
  for (auto& r : rows) out.push_back(zv(r));
  return out;
}

std::set<ZVec> as_set(const ZMat& m) { return std::set<ZVec>(m.begin(), m.end()); }

TEST(Lp, EqualityFormFeasibility) {
  // x1 + x2 = 1 has nonnegative solutions.
  EXPECT_TRUE(lp_feasible({{1, 1}}, {1}));
  // x1 + x2 = -1 does not.
  EXPECT_FALSE(lp_feasible({{1, 1}}, {-1}));
  // x1 - x2 = 0, x1 + x2 = 2 -> x = (1,1).
  EXPECT_TRUE(lp_feasible({{1, -1}, {1, 1}}, {0, 2}));
  // x1 = 1, x1 = 2 inconsistent.
  EXPECT_FALSE(lp_feasible({{1}, {1}}, {1, 2}));
  // No variables: only the zero right side is feasible.
  EXPECT_TRUE(lp_feasible(QMat{QVec{}}, {0}));
  EXPECT_FALSE(lp_feasible(QMat{QVec{}}, {3}));
  // Degenerate block with redundant rows.
  EXPECT_TRUE(lp_feasible({{1, 1}, {2, 2}}, {1, 2}));
  EXPECT_FALSE(lp_feasible({{1, 1}, {2, 2}}, {1, 3}));
}

TEST(Cone, NormalizesRays) {
  Cone c(2, zm({{-2, -2}, {-1, -1}, {-3, -3}}));
  ASSERT_EQ(c.rays().size(), 1u);
  EXPECT_EQ(c.rays()[0], zv({-1, -1}));
}

TEST(Cone, RejectsInvalid) {
  EXPECT_THROW(Cone(2, zm({{0, 0}})), tropadic_error);
  EXPECT_THROW(Cone(2, zm({{1, 0}, {-1, 0}})), tropadic_error);
  // (1,0) + (-1,1) + (0,-1) = 0: hidden line.
  EXPECT_THROW(Cone(2, zm({{1, 0}, {-1, 1}, {0, -1}})), tropadic_error);
  EXPECT_THROW(Cone(2, zm({{1, 0, 0}})), tropadic_error);
  // Fine: pointed even with a redundant interior ray.
  EXPECT_NO_THROW(Cone(2, zm({{-1, 0}, {0, -1}, {-1, -1}})));
}

TEST(Cone, DualOfNegativeOrthant) {
  Cone c(2, zm({{-1, 0}, {0, -1}}));
  ZMat dual = c.dual_generators();
  EXPECT_EQ(as_set(dual), as_set(zm({{1, 0}, {0, 1}})));
  EXPECT_TRUE(c.dual_contains_z(zv({5, 3})));
  EXPECT_TRUE(c.dual_contains_z(zv({0, 0})));
  EXPECT_FALSE(c.dual_contains_z(zv({-1, 2})));
}

TEST(Cone, DualOfOrigin) {
  Cone c(2, {});
  EXPECT_TRUE(c.is_origin());
  ZMat dual = c.dual_generators();
  EXPECT_EQ(as_set(dual), as_set(zm({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})));
  EXPECT_TRUE(c.dual_contains_z(zv({-7, 9})));
}

TEST(Cone, DualOfHalfPlaneRay) {
  Cone c(2, zm({{-1, -1}}));
  EXPECT_TRUE(c.dual_contains_z(zv({3, -2})));
  EXPECT_FALSE(c.dual_contains_z(zv({-2, 1})));
  ZMat dual = c.dual_generators();
  // The generator list is not pinned, only the cone it spans: u1 + u2 >= 0.
  for (const ZVec& g : dual) EXPECT_GE(g[0] + g[1], 0);
  for (const ZVec& probe :
       zm({{1, 0}, {0, 1}, {1, -1}, {-1, 1}, {2, 5}, {-3, 3}}))
    EXPECT_TRUE(cone_member(dual, probe));
  EXPECT_FALSE(cone_member(dual, zv({1, -2})));
  EXPECT_FALSE(cone_member(dual, zv({-1, 0})));
}

TEST(Cone, RankCaps) {
  Cone big(5, zm({{-1, 0, 0, 0, 0}}));
  EXPECT_THROW(big.dual_generators(), tropadic_error);
  EXPECT_THROW(big.faces(), tropadic_error);
  Cone four(4, zm({{-1, 0, 0, 0}}));
  EXPECT_NO_THROW(four.dual_generators());
  EXPECT_THROW(hilbert_basis(four), tropadic_error);
  try {
    hilbert_basis(four);
    FAIL();
  } catch (const tropadic_error& e) {
    EXPECT_STREQ(e.code_name(), "RankTooLarge");
  }
}

TEST(Cone, FaceEnumeration) {
  Cone ray(2, zm({{-1, -1}}));
  auto f1 = ray.faces();
  ASSERT_EQ(f1.size(), 2u);
  EXPECT_TRUE(f1[0].empty());
  EXPECT_EQ(f1[1], std::vector<int>({0}));

  Cone quad(2, zm({{-1, 0}, {0, -1}}));
  EXPECT_EQ(quad.faces().size(), 4u);

  Cone origin(2, {});
  ASSERT_EQ(origin.faces().size(), 1u);
  EXPECT_TRUE(origin.faces()[0].empty());

  // A redundant interior ray lies on no proper face.
  Cone mid(2, zm({{-1, 0}, {0, -1}, {-1, -1}}));
  auto f3 = mid.faces();
  ASSERT_EQ(f3.size(), 4u);
  EXPECT_EQ(f3[3].size(), 3u);
  for (const auto& f : f3)
    if (f.size() == 1) EXPECT_NE(f[0], 2);
}

TEST(Cone, FacesClosedUnderIntersection) {
  for (const ZMat& rays :
       {zm({{-1, 0}, {0, -1}}), zm({{-1, -1}}), zm({{-2, 1}, {1, -2}}),
        zm({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}),
        zm({{-1, -1, 0}, {0, -1, -1}})}) {
    Cone c(rays[0].size(), rays);
    auto faces = c.faces();
    std::set<std::vector<int>> index(faces.begin(), faces.end());
    EXPECT_TRUE(index.count({}));
    std::vector<int> all;
    for (size_t i = 0; i < c.rays().size(); ++i) all.push_back(static_cast<int>(i));
    EXPECT_TRUE(index.count(all));
    for (const auto& a : faces) {
      for (const auto& b : faces) {
        std::vector<int> meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(meet));
        EXPECT_TRUE(index.count(meet));
      }
    }
  }
}

TEST(Cone, FaceSections) {
  Cone quad(2, zm({{-1, 0}, {0, -1}}));
  // Perp of the face spanned by ray (-1,0): u1 = 0, u2 >= 0.
  ZMat sect = quad.dual_face_generators({0});
  EXPECT_EQ(as_set(sect), as_set(zm({{0, 1}})));
  // Zeroing coordinate 2 of the dual: u2 = 0, u1 >= 0.
  ZMat coord = quad.dual_coordinate_section({1});
  EXPECT_EQ(as_set(coord), as_set(zm({{1, 0}})));
  // Whole-cone perp is the origin.
  EXPECT_TRUE(quad.dual_face_generators({0, 1}).empty());
}

TEST(Hilbert, HalfPlaneFixture) {
  Cone c(2, zm({{-1, -1}}));
  ZMat basis = hilbert_basis(c);
  EXPECT_EQ(as_set(basis),
            as_set(zm({{1, 0}, {0, 1}, {1, -1}, {-1, 1}})));
}

TEST(Hilbert, OrthantAndLineFixtures) {
  EXPECT_EQ(as_set(hilbert_basis(Cone(2, zm({{-1, 0}, {0, -1}})))),
            as_set(zm({{1, 0}, {0, 1}})));
  EXPECT_EQ(as_set(hilbert_basis(Cone(1, {}))), as_set(zm({{1}, {-1}})));
}

TEST(Hilbert, DecomposeWitnesses) {
  // (0,1) = (1,0) + (-1,1): reachable.
  EXPECT_TRUE(monoid_decomposes(zv({0, 1}), zm({{1, 0}, {-1, 1}, {1, -1}})));
  // (1,-1) needs a negative amount of (0,1): unreachable.
  EXPECT_FALSE(monoid_decomposes(zv({1, -1}), zm({{0, 1}, {1, 0}, {-1, 1}})));
  EXPECT_TRUE(monoid_decomposes(zv({0, 0}), {}));
  EXPECT_FALSE(monoid_decomposes(zv({1, 0}), {}));
}

// The certification that backs every Hilbert fixture: basis elements lie in
// the monoid, and every lattice point of the dual inside the search box is
// an N-combination of the basis.
TEST(Hilbert, BoxCertification) {
  for (const ZMat& rays : {zm({{-1, -1}}), zm({{-1, 0}, {0, -1}}),
                           zm({{-2, 1}}), zm({{-1, 0}, {-1, -2}})}) {
    Cone c(2, rays);
    ZMat basis = hilbert_basis(c);
    ZMat dual = c.dual_generators();
    ZVec box(2, 0);
    for (size_t j = 0; j < 2; ++j) {
      for (const ZVec& g : dual) box[j] += abs(g[j]);
      box[j] *= 2;
    }
    for (const ZVec& b : basis) EXPECT_TRUE(c.dual_contains_z(b));
    for (mpz_class x = -box[0]; x <= box[0]; ++x) {
      for (mpz_class y = -box[1]; y <= box[1]; ++y) {
        ZVec u{x, y};
        if (!c.dual_contains_z(u)) continue;
        EXPECT_TRUE(monoid_decomposes(u, basis))
            << "(" << x.get_str() << "," << y.get_str() << ")";
      }
    }
  }
}

TEST(Hilbert, ThreeDimensional) {
  Cone c(3, zm({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  EXPECT_EQ(as_set(hilbert_basis(c)),
            as_set(zm({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
}

}  // namespace
}  // namespace tropadic
