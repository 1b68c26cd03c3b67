#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sptkit/cg.hpp"
#include "sptkit/group.hpp"
#include "sptkit/mbqc.hpp"
#include "sptkit/mps.hpp"
#include "sptkit/spin_ham.hpp"

namespace sptkit {

// Re-emits JSON text with %.17g numbers and the input key order; indent < 0 is compact.
std::string canonical_json(std::string_view text, int indent = 2);

std::string group_info_json(const GroupData& group);
std::string cg_table_json(const Irrep& i, const Irrep& alpha, const std::vector<CgTensor>& tensors);
std::string mps_json(const SymmetricMps& mps);
// Reads back group, sectors, chi and dense tensors (blocks and CG tensors are not restored)
SymmetricMps parse_mps_json(std::string_view text);
std::string operator_json(const TwoSiteOperator& op);
std::string hamiltonian_json(const HamiltonianTerms& terms);
// One compact record per line: {site, basis, outcome, p, byproduct_after}
std::string transcript_jsonl(const std::vector<MeasurementRecord>& transcript);
std::string matrix_json(const Mat& m);

// Human-readable irrep and character table
std::string group_info_text(const GroupData& group);

}  // namespace sptkit
