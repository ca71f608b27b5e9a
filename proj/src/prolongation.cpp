#include "algmech/prolongation.hpp"

#include <algorithm>
#include <cmath>

#include "algmech/errors.hpp"

namespace algmech {

SectionJet ProlongationSection::at(const Frame& frame) const {
  if (static_cast<int>(X.size()) != frame.m() || static_cast<int>(V.size()) != frame.m())
    throw ConfigError("", "prolongation section needs " + std::to_string(frame.m()) + " X and V components");
  return {frame.eval(X), frame.eval(V)};
}

SectionJet operator+(const SectionJet& a, const SectionJet& b) {
  SectionJet out = a;
  for (std::size_t k = 0; k < a.X.size(); ++k) {
    out.X[k] += b.X[k];
    out.V[k] += b.V[k];
  }
  return out;
}

SectionJet operator-(const SectionJet& a, const SectionJet& b) {
  SectionJet out = a;
  for (std::size_t k = 0; k < a.X.size(); ++k) {
    out.X[k] -= b.X[k];
    out.V[k] -= b.V[k];
  }
  return out;
}

SectionJet operator-(const SectionJet& a) { return -1.0 * a; }

SectionJet operator*(const Jet& f, const SectionJet& a) {
  SectionJet out;
  out.X.reserve(a.X.size());
  out.V.reserve(a.V.size());
  for (const auto& c : a.X) out.X.push_back(f * c);
  for (const auto& c : a.V) out.V.push_back(f * c);
  return out;
}

SectionJet operator*(double f, const SectionJet& a) {
  SectionJet out = a;
  for (auto& c : out.X) c *= f;
  for (auto& c : out.V) c *= f;
  return out;
}

SectionJet zero_section(const Frame& frame) {
  return {JetVector(frame.m(), frame.zero()), JetVector(frame.m(), frame.zero())};
}

SectionJet basis_section(const Frame& frame, int k) {
  SectionJet out = zero_section(frame);
  if (k < frame.m()) {
    out.X[k] = frame.constant(1.0);
  } else {
    out.V[k - frame.m()] = frame.constant(1.0);
  }
  return out;
}

const Jet& coefficient(const SectionJet& a, int k) {
  const int m = static_cast<int>(a.X.size());
  return k < m ? a.X[k] : a.V[k - m];
}

Eigen::VectorXd values(const SectionJet& a) {
  const int m = static_cast<int>(a.X.size());
  Eigen::VectorXd out(2 * m);
  for (int k = 0; k < m; ++k) {
    out(k) = a.X[k].value();
    out(m + k) = a.V[k].value();
  }
  return out;
}

int order(const SectionJet& a) {
  int k = a.X.empty() ? 0 : a.X[0].order();
  for (const auto& c : a.X) k = std::min(k, c.order());
  for (const auto& c : a.V) k = std::min(k, c.order());
  return k;
}

JetVector anchor_field(const Frame& frame, const SectionJet& a) {
  const int n = frame.n(), m = frame.m();
  JetVector field;
  field.reserve(n + m);
  for (int i = 0; i < n; ++i) {
    Jet c = frame.zero();
    for (int al = 0; al < m; ++al) {
      if (frame.sigma_zero(i, al)) continue;
      c += a.X[al] * frame.sigma(i, al);
    }
    field.push_back(std::move(c));
  }
  for (int al = 0; al < m; ++al) field.push_back(a.V[al]);
  return field;
}

Jet directional(const JetVector& field, const Jet& f) {
  if (f.order() == 0) return f.derivative(0);  // throws OrderError
  Jet out = Jet::constant(f.space(), f.order() - 1, 0.0);
  for (std::size_t k = 0; k < field.size(); ++k) out += field[k] * f.derivative(static_cast<int>(k));
  return out;
}

Jet anchor_prolongation(const Frame& frame, const SectionJet& a, const Jet& f) {
  return directional(anchor_field(frame, a), f);
}

SectionJet bracket(const Frame& frame, const SectionJet& a, const SectionJet& b) {
  const int m = frame.m();
  const JetVector wa = anchor_field(frame, a);
  const JetVector wb = anchor_field(frame, b);
  SectionJet out;
  out.X.reserve(m);
  out.V.reserve(m);
  for (int g = 0; g < m; ++g) {
    Jet x = directional(wa, b.X[g]) - directional(wb, a.X[g]);
    for (int al = 0; al < m; ++al) {
      for (int be = 0; be < m; ++be) {
        if (frame.L_zero(al, be, g)) continue;
        x += a.X[al] * b.X[be] * frame.L(al, be, g);
      }
    }
    out.X.push_back(std::move(x));
    out.V.push_back(directional(wa, b.V[g]) - directional(wb, a.V[g]));
  }
  return out;
}

SectionJet tangent_structure(const SectionJet& a) {
  SectionJet out;
  out.V = a.X;
  out.X.reserve(a.X.size());
  for (const auto& c : a.X) out.X.push_back(Jet::constant(c.space(), c.order(), 0.0));
  return out;
}

SectionJet euler_section(const Frame& frame) {
  SectionJet out;
  out.X.assign(frame.m(), frame.zero());
  for (int a = 0; a < frame.m(); ++a) out.V.push_back(frame.y(a));
  return out;
}

TensorJet TensorJet::identity(const Frame& frame) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < 2 * frame.m(); ++k) cols.push_back(basis_section(frame, k));
  return TensorJet(std::move(cols));
}

TensorJet TensorJet::zero(const Frame& frame) {
  return TensorJet(std::vector<SectionJet>(2 * frame.m(), zero_section(frame)));
}

SectionJet TensorJet::operator()(const SectionJet& a) const {
  const int m = static_cast<int>(a.X.size());
  SectionJet out;
  bool first = true;
  for (int k = 0; k < 2 * m; ++k) {
    const Jet& c = coefficient(a, k);
    const SectionJet term = c * columns_[k];
    if (first) {
      out = term;
      first = false;
    } else {
      out = out + term;
    }
  }
  return out;
}

TensorJet TensorJet::compose(const TensorJet& rhs) const {
  std::vector<SectionJet> cols;
  cols.reserve(rhs.columns_.size());
  for (const auto& c : rhs.columns_) cols.push_back((*this)(c));
  return TensorJet(std::move(cols));
}

TensorJet operator+(const TensorJet& a, const TensorJet& b) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < a.size(); ++k) cols.push_back(a.columns_[k] + b.columns_[k]);
  return TensorJet(std::move(cols));
}

TensorJet operator-(const TensorJet& a, const TensorJet& b) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < a.size(); ++k) cols.push_back(a.columns_[k] - b.columns_[k]);
  return TensorJet(std::move(cols));
}

TensorJet operator*(double f, const TensorJet& a) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < a.size(); ++k) cols.push_back(f * a.columns_[k]);
  return TensorJet(std::move(cols));
}

TensorBlock11 values(const TensorJet& t) {
  TensorBlock11 out;
  out.matrix.resize(t.size(), t.size());
  for (int k = 0; k < t.size(); ++k) out.matrix.col(k) = values(t.column(k));
  return out;
}

TensorJet tangent_structure_tensor(const Frame& frame) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < 2 * frame.m(); ++k) cols.push_back(tangent_structure(basis_section(frame, k)));
  return TensorJet(std::move(cols));
}

TensorJet lie_derivative_tensor(const Frame& frame, const SectionJet& a, const TensorJet& t) {
  std::vector<SectionJet> cols;
  for (int k = 0; k < t.size(); ++k) {
    const SectionJet e = basis_section(frame, k);
    cols.push_back(bracket(frame, a, t.column(k)) - t(bracket(frame, a, e)));
  }
  return TensorJet(std::move(cols));
}

Semispray Semispray::from_expressions(std::vector<Expr> components) {
  Semispray s;
  s.expressions_ = components;
  s.field_ = [components = std::move(components)](const Frame& frame) { return frame.eval(components); };
  return s;
}

Semispray Semispray::from_field(Field field, int order_loss) {
  Semispray s;
  s.field_ = std::move(field);
  s.order_loss_ = order_loss;
  return s;
}

JetVector Semispray::components(const Frame& frame) const {
  if (frame.order() < order_loss_)
    throw OrderError("semispray needs a frame of order >= " + std::to_string(order_loss_));
  return field_(frame);
}

SectionJet Semispray::section(const Frame& frame) const {
  SectionJet out;
  out.V = components(frame);
  for (int a = 0; a < frame.m(); ++a) out.X.push_back(frame.y(a));
  return out;
}

Jet semispray_derivative(const Frame& frame, const JetVector& s_components, const Jet& f) {
  SectionJet s;
  s.V = s_components;
  for (int a = 0; a < frame.m(); ++a) s.X.push_back(frame.y(a));
  return anchor_prolongation(frame, s, f);
}

SprayTestReport spray_test(const AlgebroidDef& def, const Semispray& s, const std::vector<EvalPoint>& samples,
                           double tol) {
  SprayTestReport report;
  report.tol = tol;
  for (const auto& p : samples) {
    const Frame frame(def, p, s.order_loss() + 1);
    const SectionJet sj = s.section(frame);
    for (int a = 0; a < def.m; ++a) {
      double r = -2.0 * sj.V[a].value();
      for (int b = 0; b < def.m; ++b) r += p.y[b] * frame.fiber_derivative(b, sj.V[a]).value();
      report.euler_residual = std::max(report.euler_residual, std::abs(r));
    }
    const Eigen::VectorXd diff = values(bracket(frame, euler_section(frame), sj)) - values(sj);
    report.bracket_residual = std::max(report.bracket_residual, diff.cwiseAbs().maxCoeff());
  }
  report.pass = report.euler_residual <= tol;
  return report;
}

std::pair<std::vector<double>, std::vector<double>> bracket_prolongation(const AlgebroidDef& def,
                                                                         const ProlongationSection& a,
                                                                         const ProlongationSection& b,
                                                                         const EvalPoint& p) {
  const Frame frame(def, p, 1);
  const SectionJet r = bracket(frame, a.at(frame), b.at(frame));
  return {values(r.X), values(r.V)};
}

}  // namespace algmech
