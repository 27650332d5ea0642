#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "hyperwave/common.hpp"

namespace hyperwave::wick {

/// A perfect matching of {0,...,2n-1}: disjoint pairs (j,k), j < k, sorted
/// by first element. (Indices are 0-based internally.)
using PairPartition = std::vector<std::pair<int, int>>;

/// Enumerates every pair partition of {0,...,2n-1} exactly once, in the
/// canonical "pair the smallest unmatched index with each larger unmatched
/// index" order. The stream is restartable (stateless callback driver).
/// n > 8 trips the combinatorial guard unless `allow_large` is set.
void for_each_pair_partition(int n, const std::function<void(const PairPartition&)>& fn,
                             bool allow_large = false);

/// Materialized enumeration for small n.
std::vector<PairPartition> pair_partitions(int n, bool allow_large = false);

/// #(pair partitions) = (2n-1)!!.
std::uint64_t pair_partition_count(int n);

/// (2n)! / (2^n n!), the coefficient mapping Var^n to the 2n-th moment.
std::uint64_t even_moment_factor(int n);

/// Dense symmetric m x m covariance with a tolerance-checked factorization.
class GaussianVectorSpec {
public:
  GaussianVectorSpec(int dim, std::vector<double> entries);
  static GaussianVectorSpec random(int dim, std::mt19937_64& rng);

  int dim() const { return m_; }
  double operator()(int i, int j) const { return c_[i * m_ + j]; }

  /// Lower-triangular factor L with C = L L^T (small ridge applied when the
  /// matrix is only semi-definite).
  const std::vector<double>& cholesky() const;
  std::vector<double> sample(std::mt19937_64& rng) const;

private:
  int m_;
  std::vector<double> c_;
  mutable std::vector<double> chol_;
};

/// E prod g_{indices}: sum over pair partitions of covariance products;
/// identically 0 for odd length.
double isserlis_moment(const GaussianVectorSpec& spec, std::span<const int> indices);

/// Dense symmetric tensor of order n over R^m (order <= 6, dim <= 8).
/// Symmetrized eagerly on construction.
class SymmetricTensor {
public:
  SymmetricTensor(int order, int dim);  // zero tensor
  static SymmetricTensor symmetrized(int order, int dim, std::span<const double> raw);
  static SymmetricTensor basis(std::span<const int> indices, int dim);  // sym(e_i1 x ... x e_in)
  static SymmetricTensor random(int order, int dim, std::mt19937_64& rng);
  static SymmetricTensor scalar(double v);  // order 0

  int order() const { return order_; }
  int dim() const { return dim_; }
  double scalar_value() const;
  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }
  void symmetrize();

private:
  int order_, dim_;
  std::vector<double> a_;
};

/// Full contraction  sum f_{i1..in} w_{i1}...w_{in} — the plain product
/// functional the Hu–Meyer identity expands.
double strat_finite(const SymmetricTensor& f, std::span<const double> w);

/// Contracts k index pairs of f against the covariance matrix; the discrete
/// analog of the iterated trace. Result has order n - 2k.
SymmetricTensor trace_k(const SymmetricTensor& f, const GaussianVectorSpec& spec, int k);

/// Multiple Ito–Skorohod (Wick) polynomial of order n evaluated at w:
/// I_0 = 1, I_1(f) = <f,w>, and the Wick recursion
///   :w_{i1}..w_{in}: = :w_{i1}..w_{i n-1}: w_{in} - sum_l C_{i_l i_n} :..\{i_l}:
double ito_multiple(const SymmetricTensor& f, std::span<const double> w,
                    const GaussianVectorSpec& spec);

struct HuMeyerTerm {
  int k;
  SymmetricTensor tensor;  // Tr^k f, order n - 2k
  double coeff;            // n! / (2^k k! (n-2k)!)
};

/// Terms of S_n(f) = sum_k coeff_k I_{n-2k}(Tr^k f).
std::vector<HuMeyerTerm> hu_meyer(const SymmetricTensor& f, const GaussianVectorSpec& spec);

/// Covariance-weighted symmetric inner product
/// <f,g> = sum f_{i...} g_{j...} prod_k C_{i_k j_k}  (test utility for the
/// orthogonality relation E I_n(f) I_n(g) = n! <f,g>).
double inner_product_sym(const SymmetricTensor& f, const SymmetricTensor& g,
                         const GaussianVectorSpec& spec);

}  // namespace hyperwave::wick
