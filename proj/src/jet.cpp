#include "algmech/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "algmech/errors.hpp"

namespace algmech {

namespace {

void enumerate(int vars, int remaining, int var, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (var == vars - 1) {
    current[var] = remaining;
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate(vars, remaining - e, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

JetSpace::JetSpace(int vars, int max_order) : vars_(vars), max_order_(max_order) {
  std::vector<std::vector<int>> monomials;
  std::vector<int> current(vars, 0);
  for (int g = 0; g <= max_order; ++g) {
    if (vars == 0) {
      if (g == 0) monomials.push_back({});
    } else {
      enumerate(vars, g, 0, current, monomials);
    }
    size_by_order_.push_back(monomials.size());
  }
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    index.emplace(monomials[k], k);
    int deg = 0;
    for (int e : monomials[k]) deg += e;
    degrees_.push_back(deg);
  }

  pair_.assign(static_cast<std::size_t>(vars) * vars, 0);
  if (max_order >= 2) {
    for (int u = 0; u < vars; ++u) {
      for (int v = 0; v < vars; ++v) {
        std::vector<int> m(vars, 0);
        ++m[u];
        ++m[v];
        pair_[u * vars + v] = index.at(m);
      }
    }
  }

  for (std::size_t a = 0; a < monomials.size(); ++a) {
    for (std::size_t b = 0; b < monomials.size(); ++b) {
      if (degrees_[a] + degrees_[b] > max_order) continue;
      std::vector<int> sum(vars);
      for (int v = 0; v < vars; ++v) sum[v] = monomials[a][v] + monomials[b][v];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(index.at(sum))});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& l, const Product& r) {
    return degrees_[l.out] < degrees_[r.out];
  });
  product_count_.assign(max_order + 1, 0);
  for (int r = 0; r <= max_order; ++r) {
    product_count_[r] = static_cast<std::size_t>(std::count_if(
        products_.begin(), products_.end(), [&](const Product& p) { return degrees_[p.out] <= r; }));
  }

  shifts_.resize(vars);
  shift_count_.assign(vars, std::vector<std::size_t>(max_order + 1, 0));
  for (int v = 0; v < vars; ++v) {
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      if (monomials[k][v] == 0) continue;
      std::vector<int> lowered = monomials[k];
      --lowered[v];
      shifts_[v].push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(index.at(lowered)),
                            static_cast<double>(monomials[k][v])});
    }
    std::stable_sort(shifts_[v].begin(), shifts_[v].end(),
                     [this](const Shift& l, const Shift& r) { return degrees_[l.dst] < degrees_[r.dst]; });
    for (int r = 0; r <= max_order; ++r) {
      shift_count_[v][r] = static_cast<std::size_t>(std::count_if(
          shifts_[v].begin(), shifts_[v].end(), [&](const Shift& s) { return degrees_[s.dst] <= r; }));
    }
  }
}

const JetSpace& JetSpace::get(int vars, int max_order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{vars, max_order}];
  if (!slot) slot.reset(new JetSpace(vars, max_order));
  return *slot;
}

Jet Jet::constant(const JetSpace& space, int order, double value) {
  Jet j(&space, order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(const JetSpace& space, int order, int var, double value) {
  Jet j(&space, order);
  j.coeffs_[0] = value;
  if (order >= 1) j.coeffs_[space.unit(var)] = 1.0;
  return j;
}

double Jet::partial(int var) const {
  if (order_ < 1) throw OrderError("first derivative requested from an order-0 jet");
  return coeffs_[space_->unit(var)];
}

double Jet::second(int u, int v) const {
  if (order_ < 2) throw OrderError("second derivative requested from a jet of order < 2");
  const double c = coeffs_[space_->pair(u, v)];
  return u == v ? 2.0 * c : c;
}

bool Jet::is_constant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double c) { return c == 0.0; });
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) throw OrderError("jet order exhausted: increase the evaluation order");
  Jet out(space_, order_ - 1);
  for (const auto& s : space_->derivative(var, order_ - 1)) out.coeffs_[s.dst] = s.factor * coeffs_[s.src];
  return out;
}

Jet Jet::truncated(int order) const {
  assert(order <= order_);
  Jet out(space_, order);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  assert(space_ == rhs.space_);
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    coeffs_.resize(space_->size(order_));
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  assert(space_ == rhs.space_);
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    coeffs_.resize(space_->size(order_));
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }

Jet& Jet::operator+=(double rhs) {
  coeffs_[0] += rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  assert(lhs.space_ == rhs.space_);
  const int order = std::min(lhs.order_, rhs.order_);
  if (lhs.is_constant()) return rhs.truncated(order) *= lhs.value();
  if (rhs.is_constant()) return lhs.truncated(order) *= rhs.value();
  Jet out(lhs.space_, order);
  const double* a = lhs.coeffs_.data();
  const double* b = rhs.coeffs_.data();
  double* c = out.coeffs_.data();
  for (const auto& t : lhs.space_->products(out.order_)) c[t.out] += a[t.lhs] * b[t.rhs];
  return out;
}

Jet operator/(const Jet& lhs, const Jet& rhs) { return lhs * reciprocal(rhs); }

Jet Jet::compose(std::span<const double> taylor) const {
  Jet h = *this;
  h.coeffs_[0] = 0.0;
  Jet out = constant(*space_, order_, taylor[order_]);
  for (int k = order_ - 1; k >= 0; --k) {
    out = out * h;
    out.coeffs_[0] += taylor[k];
  }
  return out;
}

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  std::vector<double> t(a.order() + 1);
  double p = 1.0 / a0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = (k % 2 == 0 ? p : -p);
    p /= a0;
  }
  return a.compose(t);
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(a.order() + 1);
  double factorial = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) factorial *= k;
    t[k] = cycle[k % 4] / factorial;
  }
  return a.compose(t);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(a.order() + 1);
  double factorial = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) factorial *= k;
    t[k] = cycle[k % 4] / factorial;
  }
  return a.compose(t);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::vector<double> t(a.order() + 1);
  double factorial = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) factorial *= k;
    t[k] = e / factorial;
  }
  return a.compose(t);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  std::vector<double> t(a.order() + 1);
  t[0] = std::log(a0);
  double p = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    p /= a0;
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
  }
  return a.compose(t);
}

Jet pow(const Jet& a, double exponent) {
  const double a0 = a.value();
  std::vector<double> t(a.order() + 1);
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) binom *= (exponent - (k - 1)) / k;
    t[k] = binom * std::pow(a0, exponent - k);
  }
  return a.compose(t);
}

Jet sqrt(const Jet& a) {
  Jet out = pow(a, 0.5);
  // std::sqrt is correctly rounded; std::pow(x, 0.5) need not be.
  return out + (std::sqrt(a.value()) - out.value());
}

Jet pow(const Jet& a, int exponent) {
  if (exponent < 0) return reciprocal(pow(a, -exponent));
  Jet result = Jet::constant(a.space(), a.order(), 1.0);
  if (exponent == 0) return result;
  Jet base = a;
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1) {
      result = first ? base : result * base;
      first = false;
    }
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::vector<double> values(const JetVector& jets) {
  std::vector<double> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.value());
  return out;
}

bool solve_linear(JetMatrix a, JetVector b, JetVector& x, double pivot_floor) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col].value()) > std::abs(a[pivot][col].value())) pivot = r;
    }
    if (std::abs(a[pivot][col].value()) <= pivot_floor) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Jet inv = reciprocal(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Jet factor = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, Jet{});
  for (std::size_t i = n; i-- > 0;) {
    Jet acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return true;
}

}  // namespace algmech
