#include "sptkit/mbqc.hpp"

#include <cmath>
#include <sstream>

#include "sptkit/errors.hpp"
#include "sptkit/rng.hpp"

namespace sptkit {
namespace {

Vec ket(std::initializer_list<cplx> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (auto e : entries) v(k++) = e;
  return v;
}

bool anticommutes(int a, int b) { return a != 0 && b != 0 && a != b; }

}  // namespace

double MeasurementBasis::gram_defect() const {
  double worst = 0.0;
  for (size_t i = 0; i < kets.size(); ++i)
    for (size_t j = 0; j < kets.size(); ++j)
      worst = std::max(worst, std::abs(kets[i].dot(kets[j]) - (i == j ? 1.0 : 0.0)));
  return worst;
}

MeasurementBasis computational_basis(const std::vector<std::string>& labels, std::string name) {
  MeasurementBasis b;
  b.name = std::move(name);
  b.labels = labels;
  const auto d = static_cast<Eigen::Index>(labels.size());
  for (Eigen::Index k = 0; k < d; ++k) b.kets.push_back(Vec::Unit(d, k));
  return b;
}

MeasurementBasis aklt_xyz_basis() { return computational_basis({"x", "y", "z"}, "xyz"); }

MeasurementBasis aklt_rz_basis(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  MeasurementBasis b;
  b.name = "rz(" + std::to_string(theta) + ")";
  b.labels = {"theta,x", "theta,y", "z"};
  b.kets = {ket({c, -s, 0}), ket({s, c, 0}), ket({0, 0, 1})};
  return b;
}

MeasurementBasis aklt_rx_basis(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  MeasurementBasis b;
  b.name = "rx(" + std::to_string(theta) + ")";
  b.labels = {"x", "theta,y", "theta,z"};
  b.kets = {ket({1, 0, 0}), ket({0, c, -s}), ket({0, s, c})};
  return b;
}

MeasurementBasis cluster_basis(double phi) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx e = std::polar(1.0, phi);
  MeasurementBasis b;
  b.name = "phi(" + std::to_string(phi) + ")";
  b.labels = {"+", "-"};
  b.kets = {ket({r, r * e}), ket({r, -r * e})};
  return b;
}

MeasurementBasis mixing_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  MeasurementBasis b;
  b.name = "mixing";
  b.labels = {"x+y", "x-y", "z"};
  b.kets = {ket({r, r, 0}), ket({r, -r, 0}), ket({0, 0, 1})};
  return b;
}

Mat PauliFrame::matrix() const { return phase * sptkit::pauli(this->pauli); }

std::string PauliFrame::word() const {
  static const char* names[] = {"1", "x", "y", "z"};
  std::ostringstream os;
  const double eps = 1e-12;
  if (std::abs(phase - cplx(1, 0)) < eps) os << "";
  else if (std::abs(phase - cplx(-1, 0)) < eps) os << "-";
  else if (std::abs(phase - cplx(0, 1)) < eps) os << "i";
  else if (std::abs(phase - cplx(0, -1)) < eps) os << "-i";
  else os << "e^{i" << std::arg(phase) << "}";
  os << names[this->pauli];
  return os.str();
}

std::optional<PauliFrame> PauliFrame::identify(const Mat& m, double tol) {
  if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
  for (int k = 0; k < 4; ++k) {
    const cplx c = frob_inner(sptkit::pauli(k), m) / 2.0;
    if (std::abs(std::abs(c) - 1.0) < tol && max_abs(m - c * sptkit::pauli(k)) < tol) return PauliFrame{k, c / std::abs(c)};
  }
  return std::nullopt;
}

PauliFrame operator*(const PauliFrame& a, const PauliFrame& b) {
  // sigma_a sigma_b = delta_ab 1 + i eps_abc sigma_c
  PauliFrame out;
  out.phase = a.phase * b.phase;
  if (a.pauli == 0) { out.pauli = b.pauli; return out; }
  if (b.pauli == 0) { out.pauli = a.pauli; return out; }
  if (a.pauli == b.pauli) { out.pauli = 0; return out; }
  const int c = 6 - a.pauli - b.pauli;
  const bool cyclic = (b.pauli - a.pauli + 3) % 3 == 1;
  out.pauli = c;
  out.phase *= cyclic ? kI : -kI;
  return out;
}

LogicalFrame make_frame(const SymmetricMps& mps, const Vec& junk, const Vec& protected_state) {
  if (!mps.split) throw Error(ErrorCode::InvalidInput, "state has no junk (x) protected split");
  const auto& sp = *mps.split;
  if (junk.size() != sp.junk_dim || protected_state.size() != sp.protected_dim)
    throw Error(ErrorCode::DimensionMismatch, "junk/protected vector sizes");
  LogicalFrame f;
  Vec prod(junk.size() * protected_state.size());
  for (Eigen::Index j = 0; j < junk.size(); ++j)
    prod.segment(j * protected_state.size(), protected_state.size()) = junk(j) * protected_state;
  f.boundary = sp.to_split().transpose() * prod;
  f.boundary.normalize();
  f.split = true;
  return f;
}

LogicalFrame measure_site(const SymmetricMps& mps, LogicalFrame frame, const MeasurementBasis& basis,
                          const OutcomeChoice& choice) {
  const auto& a = mps.tensors(frame.measured);
  if (frame.boundary.size() != mps.bond_dim()) throw Error(ErrorCode::DimensionMismatch, "boundary size");
  if (basis.kets.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "basis size");
  const auto nk = basis.kets.size();
  std::vector<Mat> maps(nk, Mat::Zero(a[0].rows(), a[0].cols()));
  std::vector<double> weight(nk, 0.0);
  double total = 0.0;
  for (size_t k = 0; k < nk; ++k) {
    for (size_t i = 0; i < a.size(); ++i) maps[k] += std::conj(basis.kets[k](static_cast<Eigen::Index>(i))) * a[i];
    weight[k] = (maps[k] * frame.boundary).squaredNorm();
    total += weight[k];
  }
  if (total <= 0.0) throw Error(ErrorCode::ZeroAmplitudeOutcome, "all outcomes vanish");
  MeasurementRecord rec;
  rec.site = frame.measured + 1;
  rec.basis = basis.name;
  for (auto w : weight) rec.probabilities.push_back(w / total);

  int k = 0;
  if (const auto* f = std::get_if<Forced>(&choice)) {
    k = f->index;
    if (k < 0 || k >= static_cast<int>(nk)) throw Error(ErrorCode::InvalidInput, "outcome index out of range");
    if (rec.probabilities[k] < 1e-14) throw Error(ErrorCode::ZeroAmplitudeOutcome, basis.labels[k]);
  } else {
    CounterRng rng(std::get<Sampled>(choice).seed, static_cast<std::uint64_t>(rec.site));
    const double r = rng.uniform();
    double acc = 0.0;
    k = static_cast<int>(nk) - 1;
    for (size_t q = 0; q < nk; ++q) {
      acc += rec.probabilities[q];
      if (r < acc && rec.probabilities[q] > 0.0) { k = static_cast<int>(q); break; }
    }
  }
  rec.outcome = k;
  rec.outcome_label = basis.labels[k];
  rec.p = rec.probabilities[k];

  frame.boundary = maps[k] * frame.boundary;
  frame.boundary.normalize();
  if (frame.split && mps.split) {
    const auto& sp = *mps.split;
    const Mat s = sp.to_split();
    const Mat ms = s * maps[k] * s.transpose();
    const auto sf = split_factor(ms, sp.junk_dim, sp.protected_dim);
    if (sf.residual < 1e-10 * std::max(1.0, max_abs(ms))) {
      rec.protected_map = sf.protected_;
      if (auto p = PauliFrame::identify(sf.protected_)) frame.byproduct = *p * frame.byproduct;
    } else {
      frame.split = false;
    }
  }
  rec.split_kept = frame.split;
  rec.byproduct_after = frame.byproduct;
  frame.transcript.push_back(std::move(rec));
  ++frame.measured;
  return frame;
}

namespace {
Mat split_matrix(const SymmetricMps& mps, const Vec& boundary) {
  const auto& sp = *mps.split;
  const Vec v = sp.to_split() * boundary;
  Mat m(sp.junk_dim, sp.protected_dim);
  for (int j = 0; j < sp.junk_dim; ++j)
    for (int q = 0; q < sp.protected_dim; ++q) m(j, q) = v(j * sp.protected_dim + q);
  return m;
}
}  // namespace

int junk_protected_rank(const SymmetricMps& mps, const Vec& boundary, double rel_tol) {
  if (!mps.split) throw Error(ErrorCode::InvalidInput, "state has no junk (x) protected split");
  return numerical_rank(split_matrix(mps, boundary), rel_tol);
}

Vec protected_part(const SymmetricMps& mps, const Vec& boundary) {
  if (!mps.split) throw Error(ErrorCode::InvalidInput, "state has no junk (x) protected split");
  Eigen::JacobiSVD<Mat> svd(split_matrix(mps, boundary), Eigen::ComputeFullV);
  return svd.matrixV().col(0).conjugate();
}

std::vector<Rotation> parse_gate_list(const std::string& text) {
  std::vector<Rotation> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "gate '" + item + "' needs axis:angle");
    const std::string axis = item.substr(0, colon);
    Rotation r;
    if (axis == "rz") r.axis = 3;
    else if (axis == "rx") r.axis = 1;
    else throw Error(ErrorCode::ParseError, "unknown rotation axis '" + axis + "'");
    try {
      size_t used = 0;
      r.angle = std::stod(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad angle in '" + item + "'");
    }
    if (!std::isfinite(r.angle)) throw Error(ErrorCode::InvalidInput, "angles must be finite");
    out.push_back(r);
  }
  return out;
}

Mat gate_matrix(const std::vector<Rotation>& rotations) {
  Mat g = pauli(0);
  for (const auto& r : rotations) g = pauli_rotation(r.axis, r.angle) * g;
  return g;
}

std::vector<Rotation> euler_zxz(double a, double b, double c) { return {{3, c}, {1, b}, {3, a}}; }

ResourceKind parse_resource_kind(const std::string& name) {
  if (name == "cluster") return ResourceKind::Cluster;
  if (name == "aklt") return ResourceKind::Aklt;
  throw Error(ErrorCode::InvalidInput, "resource state must be 'cluster' or 'aklt'");
}

CompileResult compile_rotation(ResourceKind kind, const std::vector<Rotation>& targets, int max_attempts,
                               std::uint64_t seed, int idle_sites) {
  for (const auto& r : targets)
    if (!std::isfinite(r.angle)) throw Error(ErrorCode::InvalidInput, "angles must be finite");
  if (idle_sites < 0) throw Error(ErrorCode::InvalidInput, "idle_sites must be >= 0");
  const SymmetricMps mps = kind == ResourceKind::Aklt ? aklt_mps() : cluster_mps();
  CounterRng rng(seed, 0xC0FFEE);
  LogicalFrame frame = make_frame(mps, Vec::Ones(1), rng.haar_state(2));
  CompileResult res;
  res.raw_product = pauli(0);

  auto absorb = [&]() {
    // M B_old = B_new G for the step just measured
    const auto& rec = frame.transcript.back();
    if (!rec.protected_map) throw Error(ErrorCode::CheckFailed, "measurement left the protected subspace");
    const Mat& m = *rec.protected_map;
    res.raw_product = m * res.raw_product;
    return m;
  };

  if (kind == ResourceKind::Aklt) {
    for (int s = 0; s < idle_sites; ++s) {
      frame = measure_site(mps, std::move(frame), aklt_xyz_basis(), Sampled{seed});
      absorb();
    }
    for (const auto& r : targets) {
      int used = 0;
      for (;;) {
        if (used >= max_attempts)
          throw Error(ErrorCode::AttemptsExhausted, "rotation not realized within " + std::to_string(max_attempts));
        ++used;
        const PauliFrame before = frame.byproduct;
        const double angle = anticommutes(before.pauli, r.axis) ? -r.angle : r.angle;
        const auto basis = r.axis == 3 ? aklt_rz_basis(angle) : aklt_rx_basis(angle);
        frame = measure_site(mps, std::move(frame), basis, Sampled{seed});
        const Mat m = absorb();
        const int fail_outcome = r.axis == 3 ? 2 : 0;
        if (frame.transcript.back().outcome == fail_outcome) continue;
        const auto b = PauliFrame::identify(m * before.matrix() * pauli_rotation(r.axis, r.angle).adjoint());
        if (!b) throw Error(ErrorCode::CheckFailed, "byproduct left the Pauli group");
        frame.byproduct = *b;
        frame.transcript.back().byproduct_after = *b;
        break;
      }
      res.attempts.push_back(used);
    }
  } else {
    if (idle_sites % 2 != 0) throw Error(ErrorCode::InvalidInput, "cluster idle sites come in pairs");
    // one site realizes H R_z(theta); the basis angle absorbs the current byproduct
    auto hadamard_step = [&](double theta) {
      const PauliFrame before = frame.byproduct;
      const bool flip = before.pauli == 1 || before.pauli == 2;
      const double phi = flip ? theta : -theta;
      frame = measure_site(mps, std::move(frame), cluster_basis(phi), Sampled{seed});
      const Mat m = absorb();
      const Mat intended = hadamard() * pauli_rotation(3, theta);
      const auto b = PauliFrame::identify(m * before.matrix() * intended.adjoint());
      if (!b) throw Error(ErrorCode::CheckFailed, "byproduct left the Pauli group");
      frame.byproduct = *b;
      frame.transcript.back().byproduct_after = *b;
    };
    for (int s = 0; s < idle_sites; ++s) hadamard_step(0.0);
    for (const auto& r : targets) {
      if (r.axis == 3) {
        hadamard_step(r.angle);
        hadamard_step(0.0);
      } else {
        hadamard_step(0.0);
        hadamard_step(r.angle);
      }
      res.attempts.push_back(2);
    }
  }
  res.transcript = frame.transcript;
  res.byproduct = frame.byproduct;
  res.target = gate_matrix(targets);
  res.corrected = res.byproduct.matrix().adjoint() * res.raw_product;
  res.fidelity = trace_fidelity(res.corrected, res.target);
  return res;
}

MpsBuildSpec protection_model(const std::string& group, int k) {
  MpsBuildSpec spec;
  spec.group = group;
  spec.basis_note = "{|x>,|y>,|z>}";
  if (group == "Z2xZ2") {
    spec.phys_irreps = {"1_(1,0)", "1_(1,1)", "1_(0,1)"};
    spec.virtual_spec = {{"2~", k}};
  } else if (group == "A4") {
    spec.phys_irreps = {"3"};
    spec.virtual_spec = {{"2~_(0)", k}, {"2~_(1)", k}, {"2~_(2)", k}};
  } else if (group == "S4") {
    spec.phys_irreps = {"3_(1)"};
    spec.virtual_spec = {{"2~_(0)", k}, {"2~_(1)", k}, {"4~", k}};
  } else {
    throw Error(ErrorCode::UnknownGroup, group + " has no junk (x) protected model");
  }
  return spec;
}

ProtectionReport identity_protection_test(const std::string& group, std::uint64_t b_seed, int n_sites,
                                          std::uint64_t measurement_seed, int junk_degeneracy) {
  if (n_sites < 0) throw Error(ErrorCode::InvalidInput, "n_sites must be >= 0");
  const GroupData gd = builtin_group(group);
  MpsBuildSpec spec = protection_model(group, junk_degeneracy);
  spec.random_seed = b_seed;
  const SymmetricMps mps = build_mps(gd, spec);
  if (!mps.split) throw Error(ErrorCode::CheckFailed, group + ": no protected split detected");

  CounterRng jr(b_seed, 0x4A554E4B);
  CounterRng pr(measurement_seed, 0x50534931);
  const Vec junk = jr.haar_state(mps.split->junk_dim);
  const Vec psi = pr.haar_state(2);

  ProtectionReport rep;
  rep.group = group;
  rep.sites = n_sites;
  LogicalFrame frame = make_frame(mps, junk, psi);
  const auto basis = aklt_xyz_basis();
  for (int s = 0; s < n_sites; ++s) frame = measure_site(mps, std::move(frame), basis, Sampled{measurement_seed});
  rep.transcript = frame.transcript;
  rep.byproduct = frame.byproduct;
  rep.final_rank = junk_protected_rank(mps, frame.boundary);
  const Vec expected = frame.byproduct.matrix() * psi;
  rep.protected_fidelity = frame.split ? std::norm(expected.dot(protected_part(mps, frame.boundary))) : 0.0;

  LogicalFrame control = make_frame(mps, junk, psi);
  control = measure_site(mps, std::move(control), mixing_basis(), Forced{0});
  rep.negative_control_rank = junk_protected_rank(mps, control.boundary);
  rep.negative_control_split_lost = !control.split && rep.negative_control_rank > 1;
  return rep;
}

}  // namespace sptkit
