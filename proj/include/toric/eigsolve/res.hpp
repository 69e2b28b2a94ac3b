#pragma once

#include "toric/cox/homogenize.hpp"
#include "toric/error.hpp"

#include <Eigen/Dense>

namespace toric {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Tolerances {
  double tol_rank = 1e-8;
  double gap_ratio = 1e3;
  double cond_max = 1e8;
  int retries_max = 3;
  double cluster_gap = 1e-4;
  double leak_tol = 1e-6;
  double zero_tol = 1e-6;
  double ratio_tol = 1e-6;
  double bpf_tol = 1e-10;
  double torus_margin = 1e-3;
};

/// Matrix of (q_1..q_s) -> sum q_i f_i from S_{beta-alpha_1} x ... to S_beta.
struct ResMatrix {
  BasisPtr rows;
  std::vector<BasisPtr> blocks;
  std::vector<std::size_t> offsets;
  CMatrix M;

  std::size_t num_rows() const { return rows->size(); }
  std::size_t num_cols() const { return static_cast<std::size_t>(M.cols()); }
};

/// Shape dim S_beta x sum dim S_{beta - alpha_i} without building the matrix.
inline std::pair<std::size_t, std::size_t> res_shape(const HomogeneousSystem& sys, const DivisorClass& beta) {
  std::size_t cols = 0;
  for (auto& a : sys.degrees) cols += graded_basis(sys.fan, beta - a).size();
  return {graded_basis(sys.fan, beta).size(), cols};
}

inline ResMatrix assemble_res(const HomogeneousSystem& sys, const DivisorClass& beta) {
  ResMatrix R;
  R.rows = make_basis(sys.fan, beta);
  std::size_t cols = 0;
  for (auto& a : sys.degrees) {
    R.offsets.push_back(cols);
    R.blocks.push_back(make_basis(sys.fan, beta - a));
    cols += R.blocks.back()->size();
  }
  if (!sys.polys.empty() && cols == 0) throw Error(Stage::Rank, "degree too low: every column block of Res is empty");
  R.M = CMatrix::Zero(static_cast<Eigen::Index>(R.rows->size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    auto terms = sys.polys[i].terms();
    const auto& blk = *R.blocks[i];
    for (std::size_t c = 0; c < blk.size(); ++c)
      for (auto& [e, coef] : terms) {
        auto r = R.rows->find(add(blk.monomials[c], e));
        if (!r) throw std::logic_error("assemble_res: product outside S_beta");
        R.M(static_cast<Eigen::Index>(*r), static_cast<Eigen::Index>(R.offsets[i] + c)) = coef;
      }
  }
  return R;
}

/// N with ker N = im Res, rows orthonormal.
struct CokernelMap {
  CMatrix N;
  std::size_t delta_plus = 0;
  Eigen::VectorXd singular_values;
  double gap = std::numeric_limits<double>::infinity();
};

/// Numerical rank decision shared by the cokernel and corank checks.
inline std::size_t numerical_rank(const Eigen::VectorXd& sv, const Tolerances& tol, double* gap_out = nullptr) {
  if (sv.size() == 0 || sv(0) == 0.0) {
    if (gap_out) *gap_out = std::numeric_limits<double>::infinity();
    return 0;
  }
  const double cut = tol.tol_rank * sv(0);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) > cut) ++r;
  double gap = std::numeric_limits<double>::infinity();
  if (r > 0 && r < static_cast<std::size_t>(sv.size())) {
    double below = sv(static_cast<Eigen::Index>(r));
    if (below > 0) gap = sv(static_cast<Eigen::Index>(r - 1)) / below;
  }
  if (gap_out) *gap_out = gap;
  if (gap < tol.gap_ratio) throw Error(Stage::Rank, "rank decision ambiguous; adjust tol");
  return r;
}

inline CokernelMap cokernel(const ResMatrix& res, const Tolerances& tol = {}) {
  CokernelMap C;
  const Eigen::Index R = static_cast<Eigen::Index>(res.num_rows());
  if (res.num_cols() == 0 || R == 0) {
    C.N = CMatrix::Identity(R, R);
    C.delta_plus = static_cast<std::size_t>(R);
    return C;
  }
  Eigen::BDCSVD<CMatrix> svd(res.M, Eigen::ComputeFullU);
  C.singular_values = svd.singularValues();
  std::size_t r = numerical_rank(C.singular_values, tol, &C.gap);
  C.delta_plus = static_cast<std::size_t>(R) - r;
  C.N = svd.matrixU().rightCols(static_cast<Eigen::Index>(C.delta_plus)).adjoint();
  return C;
}

/// dim S_beta - rank Res at beta.
inline std::size_t corank(const HomogeneousSystem& sys, const DivisorClass& beta, const Tolerances& tol = {}) {
  auto [rows, cols] = res_shape(sys, beta);
  if (cols == 0 || rows == 0) return rows;
  auto res = assemble_res(sys, beta);
  Eigen::BDCSVD<CMatrix> svd(res.M);
  return res.num_rows() - numerical_rank(svd.singularValues(), tol);
}

}  // namespace toric
