#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sptkit/cg.hpp"
#include "sptkit/errors.hpp"
#include "sptkit/rng.hpp"

using namespace sptkit;

namespace {

std::vector<Mat> block_rep(const GroupData& g, const std::vector<std::string>& labels) {
  std::vector<Mat> out;
  for (int e = 0; e < g.table.order(); ++e) {
    int n = 0;
    for (const auto& l : labels) n += g.irrep(l).dim;
    Mat m = Mat::Zero(n, n);
    int off = 0;
    for (const auto& l : labels) {
      const auto& r = g.irrep(l).matrices[e];
      m.block(off, off, r.rows(), r.cols()) = r;
      off += static_cast<int>(r.rows());
    }
    out.push_back(m);
  }
  return out;
}

double intertwining(const std::vector<Mat>& dprime, const std::vector<Mat>& d, const Mat& u) {
  double worst = 0.0;
  for (size_t e = 0; e < d.size(); ++e) worst = std::max(worst, max_abs(dprime[e] * u - u * d[e]));
  return worst;
}

}  // namespace

TEST(AverageIntertwiner, SameIrrepGivesMultipleOfIdentity) {
  const auto g = builtin_group("A4");
  const auto& d = g.irrep("3").matrices;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    CounterRng rng(s);
    const Mat m = average_intertwiner(d, d, rng.unit_disk_matrix(3, 3));
    const cplx c = m(0, 0);
    EXPECT_LT(max_abs(m - c * Mat::Identity(3, 3)), 1e-10);
  }
}

TEST(AverageIntertwiner, InequivalentIrrepsGiveZero) {
  const auto g = builtin_group("A4");
  CounterRng rng(3);
  const Mat m = average_intertwiner(g.irrep("2~_(0)").matrices, g.irrep("2~_(1)").matrices, rng.unit_disk_matrix(2, 2));
  EXPECT_LT(max_abs(m), 1e-10);
}

TEST(AverageIntertwiner, D8ProductIntertwines) {
  const auto g = builtin_group("Z2xZ2");
  const auto dprime = product_rep(g.irrep("1_(0,1)"), g.irrep("2~"));
  const auto& d = g.irrep("2~").matrices;
  CounterRng rng(11);
  const Mat m = average_intertwiner(dprime, d, rng.unit_disk_matrix(2, 2));
  EXPECT_GT(max_abs(m), 1e-3);
  EXPECT_LT(intertwining(dprime, d, m), 1e-10);
}

TEST(AverageIntertwiner, ShapeMismatchThrows) {
  const auto g = builtin_group("Z2xZ2");
  try {
    average_intertwiner(g.irrep("2~").matrices, g.irrep("2~").matrices, Mat::Zero(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ComputeCg, Z2xZ2BlocksArePaulis) {
  const auto g = builtin_group("Z2xZ2");
  const auto& tilde = g.irrep("2~");
  // hand-entered sigma_z block for 1_(0,1): commutes with a -> i sigma_z, anticommutes with x -> sigma_x
  CgTensor hand;
  hand.i_label = "1_(0,1)";
  hand.alpha_label = "2~";
  hand.beta_label = "2~";
  hand.coeffs = oracle::sigma(3);
  const auto r = verify_cg(g.table, hand, g.irrep("1_(0,1)"), tilde, tilde);
  EXPECT_LT(r.intertwining, 1e-12);
  EXPECT_LT(r.orthonormality, 1e-12);

  const std::map<std::string, int> pauli_for = {{"1_(1,0)", 1}, {"1_(1,1)", 2}, {"1_(0,1)", 3}};
  for (const auto& [label, k] : pauli_for) {
    const auto cgs = compute_cg(g.table, g.irrep(label), tilde, g.irreps, 0);
    ASSERT_EQ(cgs.size(), 1u) << label;
    EXPECT_EQ(cgs[0].beta_label, "2~");
    EXPECT_LT(distance_up_to_phase(cgs[0].coeffs, oracle::sigma(k)), 1e-12) << label;
  }
}

TEST(ComputeCg, A4SpinOneWithTwoTilde) {
  const auto g = builtin_group("A4");
  const auto cgs = compute_cg(g.table, g.irrep("3"), g.irrep("2~_(0)"), g.irreps, 0);
  ASSERT_EQ(cgs.size(), 3u);
  std::set<std::string> betas;
  for (const auto& c : cgs) {
    betas.insert(c.beta_label);
    EXPECT_EQ(c.copy, 1);
    EXPECT_TRUE(verify_cg(g.table, c, g.irrep("3"), g.irrep("2~_(0)"), g.irrep(c.beta_label)).ok());
  }
  EXPECT_EQ(betas, (std::set<std::string>{"2~_(0)", "2~_(1)", "2~_(2)"}));
}

TEST(ComputeCg, S4MultiplicityTwoSeparated) {
  const auto g = builtin_group("S4");
  const auto cgs = compute_cg(g.table, g.irrep("3_(1)"), g.irrep("4~"), g.irreps, 0);
  ASSERT_EQ(cgs.size(), 4u);
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& c : cgs) keys.emplace_back(c.beta_label, c.copy);
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::pair<std::string, int>>{{"2~_(0)", 1}, {"2~_(1)", 1}, {"4~", 1}, {"4~", 2}}));
  const CgTensor* first = nullptr;
  const CgTensor* second = nullptr;
  for (const auto& c : cgs) {
    if (c.beta_label != "4~") continue;
    (c.copy == 1 ? first : second) = &c;
  }
  ASSERT_TRUE(first && second);
  EXPECT_LT(std::abs(frob_inner(first->coeffs, second->coeffs)), 1e-9);
  for (const auto& c : cgs)
    EXPECT_TRUE(verify_cg(g.table, c, g.irrep("3_(1)"), g.irrep("4~"), g.irrep(c.beta_label)).ok());
}

TEST(ComputeCg, StackIsUnitaryForEveryLinearTimesProjective) {
  for (const auto& name : builtin_group_names()) {
    const auto g = builtin_group(name);
    for (const auto& i : g.irreps) {
      if (i.cls != CohomologyClass::Trivial) continue;
      for (const auto& a : g.irreps) {
        if (a.cls != CohomologyClass::Nontrivial) continue;
        const auto cgs = compute_cg(g.table, i, a, g.irreps, 0);
        const Mat u = stack_cg(cgs);
        ASSERT_EQ(u.rows(), u.cols()) << name << " " << i.label << " x " << a.label;
        EXPECT_LT(unitarity_defect(u), 1e-9) << name << " " << i.label << " x " << a.label;
        // (i x a) U = U (direct sum of the listed betas)
        std::vector<std::string> labels;
        for (const auto& c : cgs) labels.push_back(c.beta_label);
        EXPECT_LT(intertwining(product_rep(i, a), block_rep(g, labels), u), 1e-9);
      }
    }
  }
}

TEST(ComputeCg, SeedIndependenceForMultiplicityFree) {
  const auto g = builtin_group("A4");
  const auto a = compute_cg(g.table, g.irrep("3"), g.irrep("2~_(1)"), g.irreps, 0);
  for (std::uint64_t seed : {1u, 17u, 12345u}) {
    const auto b = compute_cg(g.table, g.irrep("3"), g.irrep("2~_(1)"), g.irreps, seed);
    ASSERT_EQ(a.size(), b.size());
    for (size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].beta_label, b[k].beta_label);
      EXPECT_LT(max_abs(a[k].coeffs - b[k].coeffs), 1e-9);
    }
  }
}

TEST(ComputeCg, MultiplicityTwoSpanIsSeedIndependent) {
  const auto g = builtin_group("S4");
  auto span_of = [&](std::uint64_t seed) {
    Mat cols(48, 2);
    int c = 0;
    for (const auto& t : compute_cg(g.table, g.irrep("3_(1)"), g.irrep("4~"), g.irreps, seed))
      if (t.beta_label == "4~") cols.col(c++) = vectorize(t.coeffs);
    return cols;
  };
  const Mat a = span_of(0), b = span_of(99);
  Mat joint(48, 4);
  joint << a, b;
  EXPECT_EQ(oracle::span_rank(joint), 2);
}

TEST(VerifyCg, ZeroedColumnShowsOrthonormalityDefect) {
  const auto g = builtin_group("Z2xZ2");
  auto cgs = compute_cg(g.table, g.irrep("1_(1,0)"), g.irrep("2~"), g.irreps, 0);
  cgs[0].coeffs.col(0).setZero();
  const auto r = verify_cg(g.table, cgs[0], g.irrep("1_(1,0)"), g.irrep("2~"), g.irrep("2~"));
  EXPECT_NEAR(r.orthonormality, 1.0, 1e-9);
  EXPECT_FALSE(r.ok());
}

TEST(FixPhase, LargestEntryBecomesRealPositive) {
  CounterRng rng(5);
  for (int k = 0; k < 20; ++k) {
    Mat m = rng.unit_disk_matrix(3, 4);
    const Mat before = m;
    fix_phase(m);
    Eigen::Index r, c;
    m.cwiseAbs().maxCoeff(&r, &c);
    EXPECT_GT(m(r, c).real(), 0.0);
    EXPECT_LT(std::abs(m(r, c).imag()), 1e-12);
    EXPECT_LT(distance_up_to_phase(before, m), 1e-12);
  }
}

TEST(ComputeCg, MultiplicityAboveTwoIsRejected) {
  // a reducible "i" made of three copies of the trivial irrep fuses to alpha three times
  const auto g = builtin_group("Z2xZ2");
  Irrep triple;
  triple.label = "3x1";
  triple.dim = 3;
  for (int e = 0; e < g.table.order(); ++e) triple.matrices.push_back(Mat::Identity(3, 3));
  try {
    compute_cg(g.table, triple, g.irrep("2~"), g.irreps, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultiplicityTooHigh);
  }
}
