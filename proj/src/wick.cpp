#include "hyperwave/wick.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hyperwave::wick {

namespace {

void enumerate_rec(int n2, std::vector<int>& matched, PairPartition& current,
                   const std::function<void(const PairPartition&)>& fn) {
  int first = -1;
  for (int i = 0; i < n2; ++i)
    if (!matched[i]) { first = i; break; }
  if (first < 0) {
    fn(current);
    return;
  }
  matched[first] = 1;
  for (int j = first + 1; j < n2; ++j) {
    if (matched[j]) continue;
    matched[j] = 1;
    current.emplace_back(first, j);
    enumerate_rec(n2, matched, current, fn);
    current.pop_back();
    matched[j] = 0;
  }
  matched[first] = 0;
}

}  // namespace

void for_each_pair_partition(int n, const std::function<void(const PairPartition&)>& fn,
                             bool allow_large) {
  if (n < 1) throw std::invalid_argument("pair partitions: n >= 1 required");
  if (n > 8 && !allow_large)
    throw SizeGuardError("pair partitions: n > 8 (" +
                         std::to_string(pair_partition_count(n)) +
                         " partitions); pass allow_large to override");
  std::vector<int> matched(2 * n, 0);
  PairPartition current;
  current.reserve(n);
  enumerate_rec(2 * n, matched, current, fn);
}

std::vector<PairPartition> pair_partitions(int n, bool allow_large) {
  std::vector<PairPartition> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(
      pair_partition_count(std::min(n, 8)), 1u << 20)));
  for_each_pair_partition(n, [&](const PairPartition& p) { out.push_back(p); },
                          allow_large);
  return out;
}

std::uint64_t pair_partition_count(int n) {
  if (n < 1) throw std::invalid_argument("pair_partition_count: n >= 1");
  if (n > 16) throw SizeGuardError("pair_partition_count: overflow past n=16");
  std::uint64_t c = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k);
  return c;
}

std::uint64_t even_moment_factor(int n) {
  return pair_partition_count(n);  // (2n)!/(2^n n!) = (2n-1)!!
}

GaussianVectorSpec::GaussianVectorSpec(int dim, std::vector<double> entries)
    : m_(dim), c_(std::move(entries)) {
  if (m_ < 1 || m_ > 8)
    throw std::invalid_argument("GaussianVectorSpec: dim in [1,8]");
  if (static_cast<int>(c_.size()) != m_ * m_)
    throw std::invalid_argument("GaussianVectorSpec: need dim*dim entries");
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < i; ++j)
      if (c_[i * m_ + j] != c_[j * m_ + i])
        throw std::invalid_argument("GaussianVectorSpec: matrix not symmetric");
  // eigenvalue floor -1e-12 via Jacobi sweeps (m <= 8)
  std::vector<double> a = c_;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m_; ++p)
      for (int q = p + 1; q < m_; ++q) off += a[p * m_ + q] * a[p * m_ + q];
    if (off < 1e-24) break;
    for (int p = 0; p < m_; ++p)
      for (int q = p + 1; q < m_; ++q) {
        double apq = a[p * m_ + q];
        if (std::abs(apq) < 1e-18) continue;
        double theta = 0.5 * (a[q * m_ + q] - a[p * m_ + p]) / apq;
        double tsign = theta >= 0 ? 1.0 : -1.0;
        double tt = tsign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double cth = 1.0 / std::sqrt(tt * tt + 1.0), sth = tt * cth;
        for (int r = 0; r < m_; ++r) {
          double arp = a[r * m_ + p], arq = a[r * m_ + q];
          a[r * m_ + p] = cth * arp - sth * arq;
          a[r * m_ + q] = sth * arp + cth * arq;
        }
        for (int r = 0; r < m_; ++r) {
          double apr = a[p * m_ + r], aqr = a[q * m_ + r];
          a[p * m_ + r] = cth * apr - sth * aqr;
          a[q * m_ + r] = sth * apr + cth * aqr;
        }
      }
  }
  double scale = 0.0;
  for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(c_[i * m_ + i]));
  for (int i = 0; i < m_; ++i)
    if (a[i * m_ + i] < -1e-12 * std::max(1.0, scale))
      throw std::invalid_argument("GaussianVectorSpec: matrix not PSD");
}

GaussianVectorSpec GaussianVectorSpec::random(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> b(dim * dim);
  for (auto& v : b) v = g(rng);
  std::vector<double> c(dim * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += b[i * dim + k] * b[j * dim + k];
      c[i * dim + j] = s / dim;
    }
  return GaussianVectorSpec(dim, std::move(c));
}

const std::vector<double>& GaussianVectorSpec::cholesky() const {
  if (!chol_.empty()) return chol_;
  std::vector<double> L(m_ * m_, 0.0);
  double ridge = 0.0;
  for (int i = 0; i < m_; ++i) ridge = std::max(ridge, c_[i * m_ + i]);
  ridge = ridge * 1e-14 + 1e-300;
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = c_[i * m_ + j] + (i == j ? ridge : 0.0);
      for (int k = 0; k < j; ++k) s -= L[i * m_ + k] * L[j * m_ + k];
      if (i == j)
        L[i * m_ + i] = std::sqrt(std::max(s, 0.0));
      else
        L[i * m_ + j] = L[j * m_ + j] > 0.0 ? s / L[j * m_ + j] : 0.0;
    }
  }
  chol_ = std::move(L);
  return chol_;
}

std::vector<double> GaussianVectorSpec::sample(std::mt19937_64& rng) const {
  const auto& L = cholesky();
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> z(m_), w(m_, 0.0);
  for (auto& v : z) v = g(rng);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j <= i; ++j) w[i] += L[i * m_ + j] * z[j];
  return w;
}

double isserlis_moment(const GaussianVectorSpec& spec, std::span<const int> indices) {
  int k = static_cast<int>(indices.size());
  if (k % 2 != 0) return 0.0;
  if (k == 0) return 1.0;
  for (int idx : indices)
    if (idx < 0 || idx >= spec.dim())
      throw std::invalid_argument("isserlis_moment: index out of range");
  double total = 0.0;
  for_each_pair_partition(k / 2, [&](const PairPartition& part) {
    double prod = 1.0;
    for (auto [a, b] : part) prod *= spec(indices[a], indices[b]);
    total += prod;
  });
  return total;
}

namespace {

std::size_t pow_int(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

SymmetricTensor::SymmetricTensor(int order, int dim)
    : order_(order), dim_(dim), a_(pow_int(dim, order), 0.0) {
  if (order < 0 || order > 6) throw std::invalid_argument("tensor order in [0,6]");
  if (dim < 1 || dim > 8) throw std::invalid_argument("tensor dim in [1,8]");
}

SymmetricTensor SymmetricTensor::scalar(double v) {
  SymmetricTensor t(0, 1);
  t.a_[0] = v;
  return t;
}

double SymmetricTensor::scalar_value() const {
  if (order_ != 0) throw std::logic_error("scalar_value on tensor of order > 0");
  return a_[0];
}

double& SymmetricTensor::at(std::span<const int> idx) {
  std::size_t flat = 0;
  for (int i = 0; i < order_; ++i) flat = flat * dim_ + idx[i];
  return a_[flat];
}

double SymmetricTensor::at(std::span<const int> idx) const {
  return const_cast<SymmetricTensor*>(this)->at(idx);
}

void SymmetricTensor::symmetrize() {
  if (order_ < 2) return;
  std::vector<int> idx(order_, 0);
  std::vector<double> out(a_.size(), 0.0);
  std::vector<int> sorted(order_);
  std::size_t total = a_.size();
  // average over the orbit of each sorted multi-index
  std::map<std::vector<int>, std::pair<double, std::size_t>> acc;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t f = flat;
    for (int i = order_ - 1; i >= 0; --i) { idx[i] = static_cast<int>(f % dim_); f /= dim_; }
    sorted.assign(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end());
    auto& slot = acc[sorted];
    slot.first += a_[flat];
    slot.second += 1;
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t f = flat;
    for (int i = order_ - 1; i >= 0; --i) { idx[i] = static_cast<int>(f % dim_); f /= dim_; }
    sorted.assign(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end());
    const auto& slot = acc[sorted];
    out[flat] = slot.first / static_cast<double>(slot.second);
  }
  a_ = std::move(out);
}

SymmetricTensor SymmetricTensor::symmetrized(int order, int dim,
                                             std::span<const double> raw) {
  SymmetricTensor t(order, dim);
  if (raw.size() != t.a_.size())
    throw std::invalid_argument("symmetrized: wrong entry count");
  std::copy(raw.begin(), raw.end(), t.a_.begin());
  t.symmetrize();
  return t;
}

SymmetricTensor SymmetricTensor::basis(std::span<const int> indices, int dim) {
  SymmetricTensor t(static_cast<int>(indices.size()), dim);
  if (t.order_ == 0) { t.a_[0] = 1.0; return t; }
  t.at(indices) = 1.0;
  t.symmetrize();
  return t;
}

SymmetricTensor SymmetricTensor::random(int order, int dim, std::mt19937_64& rng) {
  SymmetricTensor t(order, dim);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& v : t.a_) v = g(rng);
  t.symmetrize();
  return t;
}

double strat_finite(const SymmetricTensor& f, std::span<const double> w) {
  if (static_cast<int>(w.size()) != f.dim() && f.order() > 0)
    throw std::invalid_argument("strat_finite: vector length != tensor dim");
  if (f.order() == 0) return f.data()[0];
  const auto& a = f.data();
  int n = f.order(), m = f.dim();
  double total = 0.0;
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    std::size_t ff = flat;
    double prod = a[flat];
    if (prod != 0.0) {
      for (int i = n - 1; i >= 0; --i) { prod *= w[ff % m]; ff /= m; }
      total += prod;
    }
  }
  return total;
}

namespace {

SymmetricTensor trace_once(const SymmetricTensor& f, const GaussianVectorSpec& spec) {
  int n = f.order(), m = f.dim();
  SymmetricTensor g(n - 2, m);
  std::size_t rest = g.data().size();
  const auto& fa = f.data();
  for (std::size_t tail = 0; tail < rest; ++tail) {
    double s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        s += spec(a, b) * fa[(static_cast<std::size_t>(a) * m + b) * rest + tail];
    g.data()[tail] = s;
  }
  g.symmetrize();
  return g;
}

}  // namespace

SymmetricTensor trace_k(const SymmetricTensor& f, const GaussianVectorSpec& spec, int k) {
  if (k < 0 || 2 * k > f.order())
    throw std::invalid_argument("trace_k: need 0 <= 2k <= order");
  if (f.order() > 0 && f.dim() != spec.dim())
    throw std::invalid_argument("trace_k: tensor/covariance dim mismatch");
  SymmetricTensor g = f;
  for (int i = 0; i < k; ++i) g = trace_once(g, spec);
  return g;
}

namespace {

// Wick (Hermite-type) monomial :w_{i1}...w_{in}: by the removal recursion,
// memoized on the sorted multiset of indices.
double wick_monomial(std::vector<int> idx, std::span<const double> w,
                     const GaussianVectorSpec& spec,
                     std::map<std::vector<int>, double>& memo) {
  if (idx.empty()) return 1.0;
  std::sort(idx.begin(), idx.end());
  auto it = memo.find(idx);
  if (it != memo.end()) return it->second;
  int last = idx.back();
  std::vector<int> head(idx.begin(), idx.end() - 1);
  double v = wick_monomial(head, w, spec, memo) * w[last];
  for (std::size_t l = 0; l < head.size(); ++l) {
    std::vector<int> rest = head;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(l));
    v -= spec(head[l], last) * wick_monomial(std::move(rest), w, spec, memo);
  }
  memo[idx] = v;
  return v;
}

}  // namespace

double ito_multiple(const SymmetricTensor& f, std::span<const double> w,
                    const GaussianVectorSpec& spec) {
  if (f.order() == 0) return f.data()[0];
  int n = f.order(), m = f.dim();
  if (static_cast<int>(w.size()) != m || spec.dim() != m)
    throw std::invalid_argument("ito_multiple: dimension mismatch");
  std::map<std::vector<int>, double> memo;
  const auto& a = f.data();
  double total = 0.0;
  std::vector<int> idx(n);
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    if (a[flat] == 0.0) continue;
    std::size_t ff = flat;
    for (int i = n - 1; i >= 0; --i) { idx[i] = static_cast<int>(ff % m); ff /= m; }
    total += a[flat] * wick_monomial(idx, w, spec, memo);
  }
  return total;
}

std::vector<HuMeyerTerm> hu_meyer(const SymmetricTensor& f, const GaussianVectorSpec& spec) {
  int n = f.order();
  std::vector<HuMeyerTerm> terms;
  for (int k = 0; 2 * k <= n; ++k) {
    double coeff = std::tgamma(n + 1.0) /
                   (std::pow(2.0, k) * std::tgamma(k + 1.0) * std::tgamma(n - 2 * k + 1.0));
    terms.push_back({k, trace_k(f, spec, k), coeff});
  }
  return terms;
}

double inner_product_sym(const SymmetricTensor& f, const SymmetricTensor& g,
                         const GaussianVectorSpec& spec) {
  if (f.order() != g.order() || f.dim() != g.dim())
    throw std::invalid_argument("inner_product_sym: shape mismatch");
  int n = f.order(), m = f.dim();
  if (n == 0) return f.data()[0] * g.data()[0];
  const auto& fa = f.data();
  const auto& ga = g.data();
  std::vector<int> fi(n), gi(n);
  double total = 0.0;
  for (std::size_t x = 0; x < fa.size(); ++x) {
    if (fa[x] == 0.0) continue;
    std::size_t xx = x;
    for (int i = n - 1; i >= 0; --i) { fi[i] = static_cast<int>(xx % m); xx /= m; }
    for (std::size_t y = 0; y < ga.size(); ++y) {
      if (ga[y] == 0.0) continue;
      std::size_t yy = y;
      for (int i = n - 1; i >= 0; --i) { gi[i] = static_cast<int>(yy % m); yy /= m; }
      double prod = fa[x] * ga[y];
      for (int i = 0; i < n; ++i) prod *= spec(fi[i], gi[i]);
      total += prod;
    }
  }
  return total;
}

}  // namespace hyperwave::wick
