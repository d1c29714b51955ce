#include "sumdiff/choi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "sumdiff/errors.hpp"
#include "sumdiff/random.hpp"

namespace sumdiff {

namespace {

std::string position_label(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

double pair_threshold(const ComplexMatrix& m) { return kPairThreshold * m.max_abs(); }

ComplexMatrix pair_element(std::size_t dim, std::size_t r, std::size_t c, Complex z,
                           Complex z_transpose) {
  ComplexMatrix m(dim);
  m(r, c) = z;
  m(c, r) = z_transpose;
  return m;
}

ComplexMatrix pair_element(std::size_t dim, std::size_t r, std::size_t c, Complex z) {
  return pair_element(dim, r, c, z, std::conj(z));
}

// Fold sqrt(|lambda|) v into the signed set.
void emit(SignedKrausSet& ks, double lambda, ComplexVector v, std::string label) {
  if (std::abs(lambda) <= kEigenvalueCutoff) return;
  v *= std::sqrt(std::abs(lambda));
  if (lambda > 0.0) {
    ks.add_positive(fold(v), std::move(label));
  } else {
    ks.add_negative(fold(v), std::move(label));
  }
}

struct PairShape {
  bool is_pair = false;
  std::size_t r = 0;
  std::size_t c = 0;
};

// A pure rank-2 pair element: zero diagonal, exactly one nonzero conjugate pair.
PairShape pair_shape(const ComplexMatrix& m) {
  PairShape shape;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != Complex(0.0)) return {};
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (m(r, c) == Complex(0.0) && m(c, r) == Complex(0.0)) continue;
      if (shape.is_pair) return {};
      shape = {true, r, c};
    }
  }
  return shape;
}

}  // namespace

ChoiMatrix::ChoiMatrix(ComplexMatrix mat, std::size_t sys_dim)
    : mat_(std::move(mat)), sys_dim_(sys_dim) {
  if (sys_dim_ == 0 || mat_.dim() != sys_dim_ * sys_dim_) {
    throw DimensionError("ChoiMatrix: matrix dimension must be sys_dim^2");
  }
  if (!mat_.is_hermitian(kHermitianTol * std::max(1.0, mat_.max_abs()))) {
    throw ContractError("ChoiMatrix: not Hermitian");
  }
}

ComplexMatrix ChoiMatrix::block(std::size_t j, std::size_t k) const {
  const std::size_t d = sys_dim_;
  if (j >= d || k >= d) throw DimensionError("ChoiMatrix::block: index out of range");
  ComplexMatrix out(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) out(a, b) = mat_(j * d + a, k * d + b);
  }
  return out;
}

ChoiMatrix choi_from_channel(const ChannelAction& action, std::size_t d) {
  if (d == 0) throw DimensionError("choi_from_channel: d must be positive");

  Rng rng(0x5eed'c401ULL);
  const ComplexMatrix x = random_ginibre(d, rng);
  const ComplexMatrix y = random_ginibre(d, rng);
  const Complex alpha(0.7, -1.3);
  const Complex beta(-0.4, 0.9);
  const ComplexMatrix lhs = action(alpha * x + beta * y);
  const ComplexMatrix rhs = alpha * action(x) + beta * action(y);
  if (lhs.dim() != d || rhs.dim() != d) {
    throw DimensionError("choi_from_channel: action changed the dimension");
  }
  if (max_abs_diff(lhs, rhs) > 1e-10 * std::max(1.0, rhs.max_abs())) {
    throw ContractError("choi_from_channel: action is not linear");
  }

  ComplexMatrix b(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix out = action(ComplexMatrix::unit(d, j, k));
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t bb = 0; bb < d; ++bb) b(j * d + a, k * d + bb) = out(a, bb);
      }
    }
  }
  return ChoiMatrix(std::move(b), d);
}

ChoiMatrix choi_2ad(const TwoQubitAdCoeffs& c) {
  const Complex i(0.0, 1.0);
  ComplexMatrix b(16);
  b(0, 0) = c.A;
  b(1, 1) = c.C;
  b(2, 2) = c.E;
  b(3, 3) = c.H;
  b(5, 5) = c.B;
  b(7, 7) = c.F;
  b(10, 10) = c.D;
  b(11, 11) = c.G;
  b(15, 15) = 1.0;

  const auto put = [&b](std::size_t r, std::size_t col, Complex z) {
    b(r, col) = z;
    b(col, r) = std::conj(z);
  };
  put(0, 5, c.J);
  put(0, 10, c.M);
  put(0, 15, c.L);
  put(5, 10, c.P);
  put(5, 15, c.T);
  put(10, 15, c.Q);
  put(1, 7, c.U + i * c.V);
  put(2, 11, i * c.S - c.R);
  return ChoiMatrix(std::move(b), 4);
}

ChoiMatrix choi_gad(const GadParams& params) { return reconstruct_choi(gad_kraus(params)); }

ChoiMatrix reconstruct_choi(const SignedKrausSet& ks) {
  const std::size_t d = ks.dim;
  ComplexMatrix b(d * d);
  for (const auto& k : ks.positive) {
    if (k.dim() != d) throw DimensionError("reconstruct_choi: mixed dimensions");
    const ComplexVector v = unfold(k);
    b += ComplexMatrix::outer(v, v);
  }
  for (const auto& k : ks.negative) {
    if (k.dim() != d) throw DimensionError("reconstruct_choi: mixed dimensions");
    const ComplexVector v = unfold(k);
    b -= ComplexMatrix::outer(v, v);
  }
  return ChoiMatrix(std::move(b), d);
}

ComplexMatrix HermitianPartition::sum() const {
  ComplexMatrix s(sys_dim * sys_dim);
  for (const auto& e : elements) s += e;
  return s;
}

HermitianPartition partition_diag_pairs(const ChoiMatrix& b) {
  const ComplexMatrix& m = b.matrix();
  const std::size_t n = m.dim();
  const double thr = pair_threshold(m);

  HermitianPartition p;
  p.sys_dim = b.sys_dim();
  ComplexMatrix diag(n);
  for (std::size_t i = 0; i < n; ++i) diag(i, i) = m(i, i);
  p.elements.push_back(std::move(diag));
  p.labels.emplace_back("diag");

  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (std::abs(m(r, c)) <= thr) continue;
      p.elements.push_back(pair_element(n, r, c, m(r, c), m(c, r)));
      p.labels.push_back(position_label(r, c));
    }
  }
  return p;
}

HermitianPartition partition_full_spectral(const ChoiMatrix& b) {
  HermitianPartition p;
  p.sys_dim = b.sys_dim();
  p.elements.push_back(b.matrix());
  p.labels.emplace_back("full");
  return p;
}

HermitianPartition partition_custom(const ChoiMatrix& b,
                                    const std::vector<std::vector<IndexPair>>& masks) {
  const ComplexMatrix& m = b.matrix();
  const std::size_t n = m.dim();
  std::vector<int> owner(n * n, -1);

  HermitianPartition p;
  p.sys_dim = b.sys_dim();
  for (std::size_t k = 0; k < masks.size(); ++k) {
    std::set<IndexPair> cells(masks[k].begin(), masks[k].end());
    ComplexMatrix element(n);
    for (const auto& [r, c] : cells) {
      if (r >= n || c >= n) throw DimensionError("partition_custom: mask index out of range");
      if (!cells.contains({c, r})) {
        throw ContractError("partition_custom: mask " + std::to_string(k) +
                            " holds " + position_label(r, c) + " but not its transpose");
      }
      int& own = owner[r * n + c];
      if (own != -1) {
        throw ContractError("partition_custom: position " + position_label(r, c) +
                            " covered twice");
      }
      own = static_cast<int>(k);
      element(r, c) = m(r, c);
    }
    p.elements.push_back(std::move(element));
    p.labels.push_back("mask" + std::to_string(k));
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (owner[r * n + c] == -1 && m(r, c) != Complex(0.0)) {
        throw ContractError("partition_custom: nonzero entry " + position_label(r, c) +
                            " not covered");
      }
    }
  }
  return p;
}

HermitianPartition partition(const ChoiMatrix& b, const PartitionStrategy& strategy) {
  switch (strategy.kind) {
    case PartitionKind::DiagPlusPairs:
      return partition_diag_pairs(b);
    case PartitionKind::FullSpectral:
      return partition_full_spectral(b);
    case PartitionKind::Custom:
      return partition_custom(b, strategy.masks);
    case PartitionKind::SplitRealImag:
      break;
  }
  throw ContractError("partition: split-real-imag requires 2AD coefficients");
}

HermitianPartition partition_2ad(const TwoQubitAdCoeffs& c, PartitionKind kind) {
  const ChoiMatrix b = choi_2ad(c);
  if (kind == PartitionKind::FullSpectral) return partition_full_spectral(b);
  if (kind == PartitionKind::Custom) {
    throw ContractError("partition_2ad: custom masks are not supported here");
  }

  HermitianPartition p;
  p.sys_dim = 4;
  p.diag_symbols.assign(16, "");
  p.diag_symbols[0] = "A";
  p.diag_symbols[1] = "C";
  p.diag_symbols[2] = "E";
  p.diag_symbols[3] = "H";
  p.diag_symbols[5] = "B";
  p.diag_symbols[7] = "F";
  p.diag_symbols[10] = "D";
  p.diag_symbols[11] = "G";
  p.diag_symbols[15] = "1";
  // H, G, F, E, D, C, A, 1, B
  p.diag_order = {3, 11, 7, 2, 10, 1, 0, 15, 5};

  ComplexMatrix diag(16);
  for (std::size_t i = 0; i < 16; ++i) diag(i, i) = b.matrix()(i, i);
  p.elements.push_back(std::move(diag));
  p.labels.emplace_back("diag");

  const double thr = pair_threshold(b.matrix());
  const auto add = [&](std::size_t r, std::size_t col, Complex z, const char* label) {
    if (std::abs(z) <= thr) return;
    p.elements.push_back(pair_element(16, r, col, z));
    p.labels.emplace_back(label);
  };
  const Complex i(0.0, 1.0);
  add(0, 5, c.J, "J");
  add(0, 10, c.M, "M");
  add(0, 15, c.L, "L");
  if (kind == PartitionKind::SplitRealImag) {
    add(1, 7, c.U, "U");
    add(1, 7, i * c.V, "V");
    add(2, 11, -c.R, "R");
    add(2, 11, i * c.S, "S");
  } else {
    add(1, 7, c.U + i * c.V, "U+iV");
    add(2, 11, i * c.S - c.R, "iS-R");
  }
  add(5, 10, c.P, "P");
  add(5, 15, c.T, "T");
  add(10, 15, c.Q, "Q");
  return p;
}

SignedKrausSet extract_signed_kraus(const HermitianPartition& p) {
  SignedKrausSet ks;
  ks.dim = p.sys_dim;
  const std::size_t n = p.sys_dim * p.sys_dim;

  for (std::size_t e = 0; e < p.elements.size(); ++e) {
    const ComplexMatrix& m = p.elements[e];
    if (m.dim() != n) throw DimensionError("extract_signed_kraus: element dimension");
    const std::string& label = p.labels.at(e);

    if (m.is_diagonal()) {
      std::vector<std::size_t> order;
      const bool symbolic = label == "diag";
      if (symbolic) order = p.diag_order;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
      }
      for (auto i : order) {
        ComplexVector v(n);
        v[i] = 1.0;
        std::string name = symbolic && i < p.diag_symbols.size() && !p.diag_symbols[i].empty()
                               ? p.diag_symbols[i]
                               : position_label(i, i);
        emit(ks, m(i, i).real(), std::move(v), std::move(name));
      }
      continue;
    }

    if (const PairShape shape = pair_shape(m); shape.is_pair) {
      const Complex z = m(shape.r, shape.c);
      if (std::abs(z) <= kEigenvalueCutoff) continue;
      EigenSystem es = eig_rank2_pair(z, shape.r, shape.c, n);
      emit(ks, es.values[0], std::move(es.vectors[0]), label + "+");
      emit(ks, es.values[1], std::move(es.vectors[1]), label + "-");
      continue;
    }

    EigenSystem es = eig_hermitian(m);
    for (std::size_t k = 0; k < es.size(); ++k) {
      emit(ks, es.values[k], std::move(es.vectors[k]), label + "[" + std::to_string(k) + "]");
    }
  }
  return ks;
}

HermitianPartition gad_printed_partition(const GadParams& params) {
  GadPrintedSplit split = gad_printed_split(params);
  HermitianPartition p;
  p.sys_dim = 2;
  p.elements.push_back(swap_factors(split.b_plus, 2, 2));
  p.elements.push_back(-1.0 * swap_factors(split.b_minus, 2, 2));
  p.labels = {"B+", "-B-"};
  return p;
}

SignedKrausSet standard_kraus_from_choi(const ChoiMatrix& b) {
  SignedKrausSet ks;
  ks.dim = b.sys_dim();
  EigenSystem es = eig_hermitian(b.matrix());
  for (std::size_t k = 0; k < es.size(); ++k) {
    emit(ks, es.values[k], std::move(es.vectors[k]), "S" + std::to_string(k));
  }
  return ks;
}

std::size_t count_offdiagonal_pairs(const ComplexMatrix& m) {
  const double thr = pair_threshold(m);
  std::size_t count = 0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = r + 1; c < m.dim(); ++c) {
      if (std::abs(m(r, c)) > thr || std::abs(m(c, r)) > thr) ++count;
    }
  }
  return count;
}

CharpolyReport charpoly_checks(const TwoQubitAdCoeffs& c) {
  const HermitianPartition p = partition_2ad(c, PartitionKind::SplitRealImag);

  CharpolyReport report;
  report.diag_expected = {c.A, c.C, c.E, c.H, c.B, c.F, c.D, c.G, 1.0};
  report.diag_expected.resize(16, 0.0);
  std::sort(report.diag_expected.begin(), report.diag_expected.end(), std::greater<>());
  report.diag_eigenvalues = eig_hermitian(p.elements.front()).values;
  for (std::size_t i = 0; i < 16; ++i) {
    report.diag_error = std::max(
        report.diag_error, std::abs(report.diag_eigenvalues[i] - report.diag_expected[i]));
  }

  const std::map<std::string, double> magnitudes = {
      {"J", std::abs(c.J)}, {"M", std::abs(c.M)}, {"L", std::abs(c.L)},
      {"P", std::abs(c.P)}, {"T", std::abs(c.T)}, {"Q", std::abs(c.Q)},
      {"U", std::abs(c.U)}, {"V", std::abs(c.V)}, {"R", std::abs(c.R)},
      {"S", std::abs(c.S)}};

  for (std::size_t e = 1; e < p.size(); ++e) {
    BlockSpectrumCheck check;
    check.label = p.labels[e];
    check.expected_magnitude = magnitudes.at(check.label);
    const EigenSystem es = eig_hermitian(p.elements[e]);
    double rest = 0.0;
    for (std::size_t k = 0; k < es.size(); ++k) {
      if (std::abs(es.values[k]) > kEigenvalueCutoff) {
        check.nonzero_eigenvalues.push_back(es.values[k]);
      }
      if (k != 0 && k + 1 != es.size()) rest = std::max(rest, std::abs(es.values[k]));
    }
    check.error = std::max({std::abs(es.values.front() - check.expected_magnitude),
                            std::abs(es.values.back() + check.expected_magnitude), rest});
    report.max_pair_error = std::max(report.max_pair_error, check.error);
    report.pairs.push_back(std::move(check));
  }
  return report;
}

}  // namespace sumdiff
