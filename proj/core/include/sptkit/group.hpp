#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sptkit/linalg.hpp"

namespace sptkit {

using ElementId = int;

struct GroupTable {
  std::vector<std::vector<ElementId>> mult;  // mult[a][b] = a*b
  std::vector<ElementId> inverse;
  ElementId identity = 0;
  std::vector<std::string> generator_names;
  std::vector<ElementId> generators;
  std::vector<std::vector<int>> words;  // generator indices, left to right
  std::optional<ElementId> center_kernel;
  std::vector<Mat> faithful;  // defining matrices, one per element

  int order() const { return static_cast<int>(mult.size()); }
  ElementId product(ElementId a, ElementId b) const { return mult[a][b]; }
  ElementId evaluate_word(std::span<const int> word) const;
  std::string word_string(ElementId g) const;
  int generator_index(std::string_view name) const;
};

GroupTable enumerate_group(std::span<const Mat> generators, int max_order,
                           std::vector<std::string> names = {}, double tol = 1e-10);

// Dot-separated generator names ("a.a"); "e" or "" is the identity.
std::vector<int> parse_word(const GroupTable& table, std::string_view word);

enum class CohomologyClass { Trivial, Nontrivial };  // "e", "a"

std::string_view class_tag(CohomologyClass c);
CohomologyClass parse_class_tag(std::string_view tag);

struct Irrep {
  std::string label;
  int dim = 0;
  CohomologyClass cls = CohomologyClass::Trivial;
  std::vector<Mat> matrices;  // indexed by ElementId

  std::vector<cplx> character() const;
  std::optional<std::vector<cplx>> onedim_character() const;
};

// Builds D(g) for every element from generator images along the table's words.
// Validates unitarity, closure and irreducibility at tol.
Irrep materialize_irrep(const GroupTable& table, std::string label, CohomologyClass cls,
                        std::span<const Mat> generator_images, double tol = 1e-10);

struct FactorSystem {
  std::vector<std::vector<cplx>> omega;  // omega[g1][g2]
  CohomologyClass cls = CohomologyClass::Trivial;

  double cocycle_residual(const GroupTable& table) const;
};

// omega from D(g1)D(g2) = omega D(g1 g2), read off the first entry above 1e-6.
FactorSystem factor_system(const GroupTable& table, std::span<const Mat> matrices,
                           CohomologyClass cls);

FactorSystem rephase_factor_system(const GroupTable& table, const FactorSystem& fs,
                                   std::span<const cplx> beta);

// Projective representation of the quotient by {e, z}: one section element per coset.
struct CentralQuotient {
  GroupTable table;
  std::vector<ElementId> section;       // quotient id -> cover id
  std::vector<int> coset_of;            // cover id -> quotient id
};
CentralQuotient central_quotient(const GroupTable& cover);

// Factor system of rep restricted to the section of the central quotient.
FactorSystem projective_factor_system(const CentralQuotient& q, const Irrep& rep);

CohomologyClass classify_irrep(const GroupTable& table, const Irrep& rep, double tol = 1e-10);

// Max over pairs of ||D(g1)D(g2) - omega D(g1 g2)|| together with max ||omega| - 1|.
double projective_closure_residual(const GroupTable& table, std::span<const Mat> matrices);

double character_norm(const GroupTable& table, const Irrep& rep);
cplx character_inner(const GroupTable& table, const Irrep& a, const Irrep& b);

std::map<std::string, int> fusion_multiplicities(const GroupTable& table, const Irrep& i,
                                                 const Irrep& alpha,
                                                 std::span<const Irrep> irreps);

struct GroupData {
  std::string name;
  GroupTable table;
  std::vector<Irrep> irreps;

  const Irrep& irrep(std::string_view label) const;
  int irrep_index(std::string_view label) const;
};

// "Z2xZ2", "D4", "A4", "S4"
GroupData builtin_group(std::string_view name);
std::vector<std::string> builtin_group_names();
std::string_view builtin_group_source(std::string_view name);

// Double cover of D_n with the class-e / class-a 2D irreps; n >= 2.
GroupData dihedral_cover(int n);

GroupData parse_group_spec(std::string_view json_text, double tol = 1e-10);
GroupData load_group_spec(const std::string& path, double tol = 1e-10);
GroupData resolve_group(std::string_view name_or_path);

// Product of two reps as kron per element (i-major)
std::vector<Mat> product_rep(const Irrep& a, const Irrep& b);
// Rescale every matrix by a 1D character: D(g) * chi(g)
Irrep rephase(const Irrep& rep, const Irrep& chi);
// Find the irrep in the list equivalent to rep (character match); -1 if none
int find_equivalent(const GroupTable& table, std::span<const Irrep> irreps,
                    std::span<const cplx> character, double tol = 1e-8);

}  // namespace sptkit
