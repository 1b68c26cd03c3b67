#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "printed.hpp"
#include "sptkit/errors.hpp"
#include "sptkit/group.hpp"
#include "sptkit/rng.hpp"

using namespace sptkit;

namespace {

using printed::kCoverOrder;
const auto& kPrintedClasses = printed::kClasses;

// Distinct products of generator words up to a given length, compared entrywise.
int count_by_words(const std::vector<oracle::Mat>& gens, int max_len) {
  std::vector<oracle::Mat> found{oracle::Mat::Identity(gens[0].rows(), gens[0].cols())};
  std::vector<oracle::Mat> frontier = found;
  for (int len = 0; len < max_len; ++len) {
    std::vector<oracle::Mat> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        const oracle::Mat p = m * g;
        bool seen = false;
        for (const auto& f : found) seen = seen || (f - p).cwiseAbs().maxCoeff() < 1e-9;
        if (!seen) {
          found.push_back(p);
          next.push_back(p);
        }
      }
    frontier = next;
  }
  return static_cast<int>(found.size());
}

class BuiltinGroup : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(BuiltinGroup, CompletenessSumOfSquaredDims) {
  const auto g = builtin_group(GetParam());
  EXPECT_EQ(g.table.order(), kCoverOrder.at(GetParam()));
  int sum = 0;
  for (const auto& ir : g.irreps) sum += ir.dim * ir.dim;
  EXPECT_EQ(sum, g.table.order());
}

TEST_P(BuiltinGroup, IrrepsAreUnitaryAndClosed) {
  const auto g = builtin_group(GetParam());
  for (const auto& ir : g.irreps) {
    for (const auto& m : ir.matrices) EXPECT_LT(unitarity_defect(m), 1e-10) << ir.label;
    EXPECT_LT(projective_closure_residual(g.table, ir.matrices), 1e-10) << ir.label;
    // direct pairwise check of the cover representation
    double worst = 0.0;
    for (int a = 0; a < g.table.order(); ++a)
      for (int b = 0; b < g.table.order(); ++b)
        worst = std::max(worst, max_abs(ir.matrices[a] * ir.matrices[b] - ir.matrices[g.table.product(a, b)]));
    EXPECT_LT(worst, 1e-10) << ir.label;
  }
}

TEST_P(BuiltinGroup, QuotientFactorSystemsSatisfyCocycle) {
  const auto g = builtin_group(GetParam());
  const auto q = central_quotient(g.table);
  EXPECT_EQ(q.table.order() * 2, g.table.order());
  for (const auto& ir : g.irreps) {
    const auto fs = projective_factor_system(q, ir);
    EXPECT_LT(fs.cocycle_residual(q.table), 1e-10) << ir.label;
  }
}

TEST_P(BuiltinGroup, CharacterOrthogonality) {
  const auto g = builtin_group(GetParam());
  for (size_t a = 0; a < g.irreps.size(); ++a)
    for (size_t b = 0; b < g.irreps.size(); ++b) {
      const cplx ip = character_inner(g.table, g.irreps[a], g.irreps[b]);
      EXPECT_NEAR(std::abs(ip - cplx(a == b ? 1.0 : 0.0)), 0.0, 1e-9) << g.irreps[a].label << " " << g.irreps[b].label;
    }
}

TEST_P(BuiltinGroup, ClassLabelsMatchPrintedLists) {
  const auto g = builtin_group(GetParam());
  const auto& expected = kPrintedClasses.at(GetParam());
  ASSERT_EQ(g.irreps.size(), expected.size());
  for (const auto& ir : g.irreps) {
    ASSERT_TRUE(expected.count(ir.label)) << ir.label;
    EXPECT_EQ(class_tag(ir.cls)[0], expected.at(ir.label)) << ir.label;
    EXPECT_EQ(classify_irrep(g.table, ir), ir.cls) << ir.label;
  }
}

TEST_P(BuiltinGroup, ClassInvariantUnderOneDimRephasing) {
  const auto g = builtin_group(GetParam());
  for (const auto& chi : g.irreps) {
    if (chi.dim != 1) continue;
    for (const auto& ir : g.irreps) EXPECT_EQ(classify_irrep(g.table, rephase(ir, chi)), ir.cls);
  }
}

TEST_P(BuiltinGroup, FusionDimensionsAddUp) {
  const auto g = builtin_group(GetParam());
  for (const auto& i : g.irreps)
    for (const auto& a : g.irreps) {
      const auto mult = fusion_multiplicities(g.table, i, a, g.irreps);
      int total = 0;
      for (const auto& [label, n] : mult) {
        EXPECT_GE(n, 0);
        total += n * g.irrep(label).dim;
      }
      EXPECT_EQ(total, i.dim * a.dim);
    }
}

INSTANTIATE_TEST_SUITE_P(Covers, BuiltinGroup, ::testing::Values("Z2xZ2", "D4", "A4", "S4"));

TEST(EnumerateGroup, D8FromPauliGenerators) {
  const std::vector<Mat> gens = {cplx(0, 1) * pauli(3), pauli(1)};
  const auto t = enumerate_group(gens, 64);
  EXPECT_EQ(t.order(), 8);
  EXPECT_EQ(count_by_words({gens[0], gens[1]}, 8), 8);
  for (int a = 0; a < t.order(); ++a) EXPECT_EQ(t.product(a, t.inverse[a]), t.identity);
}

TEST(EnumerateGroup, BinaryTetrahedralFromTwoDimIrrep) {
  const auto a4 = builtin_group("A4");
  const auto& rep = a4.irrep("2~_(0)");
  std::vector<Mat> gens;
  for (auto g : a4.table.generators) gens.push_back(rep.matrices[g]);
  EXPECT_EQ(enumerate_group(gens, 4096).order(), 24);
  EXPECT_EQ(count_by_words({gens[0], gens[1]}, 12), 24);
}

TEST(EnumerateGroup, IdentityGeneratorGivesTrivialGroup) {
  const std::vector<Mat> gens = {Mat::Identity(2, 2)};
  const auto t = enumerate_group(gens, 8);
  EXPECT_EQ(t.order(), 1);
  EXPECT_EQ(t.word_string(t.identity), "e");
}

TEST(EnumerateGroup, WordsEvaluateToTheirElements) {
  const auto g = builtin_group("S4");
  for (int e = 0; e < g.table.order(); ++e) EXPECT_EQ(g.table.evaluate_word(g.table.words[e]), e);
}

TEST(EnumerateGroup, RejectsNonUnitaryAndInfinite) {
  Mat bad(2, 2);
  bad << 1, 1, 0, 1;
  try {
    enumerate_group(std::vector<Mat>{bad}, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitaryGenerator);
  }
  // irrational rotation never closes
  const std::vector<Mat> rot = {pauli_rotation(3, 1.0)};
  try {
    enumerate_group(rot, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderExceeded);
  }
}

TEST(BuiltinGroups, UnknownNameThrows) {
  try {
    builtin_group("Z3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGroup);
    EXPECT_EQ(exit_status(e.code()), 2);
  }
}

TEST(BuiltinGroups, S4FourDimIsTwoTimesTwoTilde) {
  const auto g = builtin_group("S4");
  const auto prod = product_rep(g.irrep("2"), g.irrep("2~_(0)"));
  std::vector<cplx> chars;
  for (const auto& m : prod) chars.push_back(m.trace());
  EXPECT_EQ(g.irreps[find_equivalent(g.table, g.irreps, chars)].label, "4~");
}

TEST(Classify, Examples) {
  const auto z2 = builtin_group("Z2xZ2");
  EXPECT_EQ(classify_irrep(z2.table, z2.irrep("2~")), CohomologyClass::Nontrivial);
  EXPECT_EQ(classify_irrep(z2.table, z2.irrep("1_(0,1)")), CohomologyClass::Trivial);
  const auto a4 = builtin_group("A4");
  EXPECT_EQ(classify_irrep(a4.table, a4.irrep("3")), CohomologyClass::Trivial);
}

TEST(Classify, ReducibleMixtureIsNotScalarOnKernel) {
  const auto z2 = builtin_group("Z2xZ2");
  Irrep mixed;
  mixed.label = "1+2~";
  mixed.dim = 3;
  for (int g = 0; g < z2.table.order(); ++g) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = 1.0;
    m.block(1, 1, 2, 2) = z2.irrep("2~").matrices[g];
    mixed.matrices.push_back(m);
  }
  try {
    classify_irrep(z2.table, mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotScalarOnKernel);
  }
}

TEST(Rephase, IdentityGaugeLeavesOmegaUnchanged) {
  const auto z2 = builtin_group("Z2xZ2");
  const auto q = central_quotient(z2.table);
  const auto fs = projective_factor_system(q, z2.irrep("2~"));
  const std::vector<cplx> ones(q.table.order(), 1.0);
  const auto out = rephase_factor_system(q.table, fs, ones);
  for (int a = 0; a < q.table.order(); ++a)
    for (int b = 0; b < q.table.order(); ++b) EXPECT_EQ(out.omega[a][b], fs.omega[a][b]);
}

TEST(Rephase, RandomGaugeKeepsCocycleAndCommutatorPhase) {
  const auto z2 = builtin_group("Z2xZ2");
  const auto q = central_quotient(z2.table);
  for (const auto* label : {"2~", "1_(0,1)"}) {
    const auto fs = projective_factor_system(q, z2.irrep(label));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CounterRng rng(seed);
      std::vector<cplx> beta;
      for (int g = 0; g < q.table.order(); ++g) beta.push_back(std::polar(1.0, 2 * std::numbers::pi * rng.uniform()));
      const auto out = rephase_factor_system(q.table, fs, beta);
      EXPECT_LT(out.cocycle_residual(q.table), 1e-12);
      EXPECT_EQ(out.cls, fs.cls);
      // omega(g,h)/omega(h,g) on the abelian quotient is gauge invariant and detects the class
      for (int a = 0; a < q.table.order(); ++a)
        for (int b = 0; b < q.table.order(); ++b) {
          const cplx before = fs.omega[a][b] / fs.omega[b][a];
          const cplx after = out.omega[a][b] / out.omega[b][a];
          EXPECT_LT(std::abs(before - after), 1e-12);
        }
    }
  }
}

TEST(Rephase, TrivialClassStaysTrivial) {
  const auto z2 = builtin_group("Z2xZ2");
  const auto q = central_quotient(z2.table);
  const auto fs = projective_factor_system(q, z2.irrep("1_(1,1)"));
  CounterRng rng(7);
  std::vector<cplx> beta;
  for (int g = 0; g < q.table.order(); ++g) beta.push_back(std::polar(1.0, 6.0 * rng.uniform()));
  const auto out = rephase_factor_system(q.table, fs, beta);
  // coboundary of a linear rep: commutator phases all 1
  for (int a = 0; a < q.table.order(); ++a)
    for (int b = 0; b < q.table.order(); ++b) EXPECT_LT(std::abs(out.omega[a][b] / out.omega[b][a] - 1.0), 1e-12);
  EXPECT_EQ(out.cls, CohomologyClass::Trivial);
}

TEST(Rephase, RejectsNonUnitBeta) {
  const auto z2 = builtin_group("Z2xZ2");
  const auto q = central_quotient(z2.table);
  const auto fs = projective_factor_system(q, z2.irrep("2~"));
  std::vector<cplx> beta(q.table.order(), 1.0);
  beta[1] = 2.0;
  EXPECT_THROW(rephase_factor_system(q.table, fs, beta), Error);
}

TEST(Fusion, Examples) {
  const auto s4 = builtin_group("S4");
  const auto m = fusion_multiplicities(s4.table, s4.irrep("3_(1)"), s4.irrep("4~"), s4.irreps);
  const std::map<std::string, int> want = {{"2~_(0)", 1}, {"2~_(1)", 1}, {"4~", 2}};
  EXPECT_EQ(m, want);

  const auto a4 = builtin_group("A4");
  const auto m2 = fusion_multiplicities(a4.table, a4.irrep("3"), a4.irrep("2~_(0)"), a4.irreps);
  // character-sum oracle computed here
  std::map<std::string, int> oracle_mult;
  for (const auto& b : a4.irreps) {
    cplx s = 0;
    for (int g = 0; g < a4.table.order(); ++g)
      s += a4.irrep("3").matrices[g].trace() * a4.irrep("2~_(0)").matrices[g].trace() * std::conj(b.matrices[g].trace());
    const int n = static_cast<int>(std::lround(s.real() / a4.table.order()));
    if (n) oracle_mult[b.label] = n;
  }
  EXPECT_EQ(m2, oracle_mult);
  EXPECT_EQ(m2, (std::map<std::string, int>{{"2~_(0)", 1}, {"2~_(1)", 1}, {"2~_(2)", 1}}));

  for (const auto& ir : a4.irreps) {
    const auto id = fusion_multiplicities(a4.table, ir, a4.irrep("1_(0)"), a4.irreps);
    EXPECT_EQ(id, (std::map<std::string, int>{{ir.label, 1}}));
  }
}

TEST(Fusion, IncompleteIrrepListIsNonInteger) {
  const auto a4 = builtin_group("A4");
  // a reducible "irrep" (sum of two) breaks the integer character sums
  Irrep sum;
  sum.label = "1+1";
  sum.dim = 2;
  for (int g = 0; g < a4.table.order(); ++g) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = a4.irrep("1_(0)").matrices[g](0, 0);
    m(1, 1) = a4.irrep("1_(1)").matrices[g](0, 0);
    sum.matrices.push_back(m);
  }
  const std::vector<Irrep> list = {sum};
  try {
    fusion_multiplicities(a4.table, a4.irrep("1_(0)"), a4.irrep("1_(0)"), list);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegerMultiplicity);
  }
}

TEST(GroupSpec, SingleElementFile) {
  const auto gd = parse_group_spec(R"({"name":"trivial","generator_matrices":[[[1]]],
    "irreps":[{"label":"1","class":"e","generator_images":{"g0":[[1]]}}]})");
  EXPECT_EQ(gd.table.order(), 1);
  ASSERT_EQ(gd.irreps.size(), 1u);
  EXPECT_EQ(gd.irreps[0].dim, 1);
}

TEST(GroupSpec, MalformedJsonIsParseError) {
  try {
    parse_group_spec("{not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(DihedralCover, ClassesForSeveralN) {
  for (int n : {2, 3, 4, 6}) {
    const auto g = dihedral_cover(n);
    int sum = 0;
    for (const auto& ir : g.irreps) {
      sum += ir.dim * ir.dim;
      EXPECT_EQ(classify_irrep(g.table, ir), ir.cls);
    }
    EXPECT_GT(sum, 0);
  }
}
