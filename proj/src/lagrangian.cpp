#include "algmech/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "algmech/errors.hpp"

namespace algmech {

namespace {

std::string describe(const EvalPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "x=(";
  for (std::size_t i = 0; i < p.x.size(); ++i) os << (i ? "," : "") << p.x[i];
  os << ") y=(";
  for (std::size_t i = 0; i < p.y.size(); ++i) os << (i ? "," : "") << p.y[i];
  os << ")";
  return os.str();
}

Eigen::MatrixXd value_matrix(const JetMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.size());
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) out(a, b) = m[a][b].value();
  return out;
}

}  // namespace

double singularity_floor(const Eigen::MatrixXd& matrix) {
  const double scale = matrix.size() ? matrix.cwiseAbs().maxCoeff() : 0.0;
  return 1e-10 * std::pow(scale, static_cast<double>(matrix.rows()));
}

void require_regular(const Eigen::MatrixXd& matrix, const EvalPoint& p, const char* what) {
  const double det = matrix.rows() ? matrix.determinant() : 1.0;
  const double floor = singularity_floor(matrix);
  if (matrix.rows() && (!(std::abs(det) >= floor) || floor == 0.0))
    throw SingularMetricError(std::string(what) + " at " + describe(p), det);
}

FiberMetric fiber_metric(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p) {
  const Jet2 j = eval_jet(lagrangian, p);
  FiberMetric out;
  out.g = j.hess.bottomRightCorner(def.m, def.m);
  require_regular(out.g, p, "fiber metric");
  out.determinant = out.g.determinant();
  out.inverse = out.g.inverse();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.g);
  const auto& sv = svd.singularValues();
  out.condition = sv(0) / sv(sv.size() - 1);
  return out;
}

LagrangianJets::LagrangianJets(const Frame& frame, const Expr& lagrangian) : L(frame.eval(lagrangian)) {
  const int n = frame.n(), m = frame.m();
  dx.reserve(n);
  for (int i = 0; i < n; ++i) dx.push_back(L.derivative(i));
  dy.reserve(m);
  for (int a = 0; a < m; ++a) dy.push_back(frame.fiber_derivative(a, L));
  dxy.assign(n, JetVector(m));
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < m; ++b) dxy[i][b] = dy[b].derivative(i);
  g.assign(m, JetVector(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g[a][b] = a <= b ? frame.fiber_derivative(b, dy[a]) : g[b][a];
}

JetVector canonical_semispray_components(const Frame& frame, const LagrangianJets& lj) {
  const int n = frame.n(), m = frame.m();
  require_regular(value_matrix(lj.g), frame.point(), "fiber metric");
  JetVector rhs;
  rhs.reserve(m);
  for (int b = 0; b < m; ++b) {
    Jet r = frame.anchor_derivative(b, lj.L);
    for (int a = 0; a < m; ++a) {
      Jet t = Jet::constant(frame.space(), std::max(frame.order() - 2, 0), 0.0);
      for (int i = 0; i < n; ++i)
        if (!frame.sigma_zero(i, a)) t += frame.sigma(i, a) * lj.dxy[i][b];
      r -= t * frame.y(a);
      for (int c = 0; c < m; ++c)
        if (!frame.L_zero(b, a, c)) r -= frame.L(b, a, c) * frame.y(a) * lj.dy[c];
    }
    rhs.push_back(std::move(r));
  }
  JetVector s;
  if (!solve_linear(lj.g, rhs, s, 0.0)) throw SingularMetricError("fiber metric at " + describe(frame.point()), 0.0);
  return s;
}

Semispray canonical_semispray(const AlgebroidDef& def, const Expr& lagrangian) {
  (void)def;
  return Semispray::from_field(
      [lagrangian](const Frame& frame) { return canonical_semispray_components(frame, LagrangianJets(frame, lagrangian)); },
      2);
}

Jet energy(const Frame& frame, const LagrangianJets& lj) {
  Jet e = -lj.L;
  for (int a = 0; a < frame.m(); ++a) e += frame.y(a) * lj.dy[a];
  return e;
}

double energy(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p) {
  const Frame frame(def, p, 2);
  return energy(frame, LagrangianJets(frame, lagrangian)).value();
}

std::vector<double> cartan_one_section(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p) {
  const Frame frame(def, p, 2);
  return values(LagrangianJets(frame, lagrangian).dy);
}

Jet cartan_one_section(const LagrangianJets& lj, const SectionJet& a) {
  Jet out = lj.dy[0] * a.X[0];
  for (std::size_t k = 1; k < a.X.size(); ++k) out += lj.dy[k] * a.X[k];
  return out;
}

CartanForm::CartanForm(const Frame& frame, const LagrangianJets& lj) : g_(lj.g) {
  const int n = frame.n(), m = frame.m();
  c_.assign(m, JetVector(m));
  // sigma_a^i d^2L/dx^i dy^b
  JetMatrix mixed(m, JetVector(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Jet t = Jet::constant(frame.space(), std::max(frame.order() - 2, 0), 0.0);
      for (int i = 0; i < n; ++i)
        if (!frame.sigma_zero(i, a)) t += frame.sigma(i, a) * lj.dxy[i][b];
      mixed[a][b] = std::move(t);
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Jet c = mixed[a][b] - mixed[b][a];
      for (int e = 0; e < m; ++e)
        if (!frame.L_zero(a, b, e)) c -= lj.dy[e] * frame.L(a, b, e);
      c_[a][b] = std::move(c);
    }
  }
}

Jet CartanForm::operator()(const SectionJet& a, const SectionJet& b) const {
  const std::size_t m = g_.size();
  Jet out = Jet::constant(g_[0][0].space(), g_[0][0].order(), 0.0);
  for (std::size_t al = 0; al < m; ++al) {
    for (std::size_t be = 0; be < m; ++be) {
      out += g_[al][be] * (a.V[be] * b.X[al] - b.V[be] * a.X[al]);
      if (al != be) out += c_[al][be] * a.X[al] * b.X[be];
    }
  }
  return out;
}

double cartan_two_section(const AlgebroidDef& def, const Expr& lagrangian, const ProlongationSection& a,
                          const ProlongationSection& b, const EvalPoint& p) {
  const Frame frame(def, p, 2);
  const LagrangianJets lj(frame, lagrangian);
  return CartanForm(frame, lj)(a.at(frame), b.at(frame)).value();
}

double symplectic_equation_residual(const AlgebroidDef& def, const Expr& lagrangian, const Semispray& s,
                                    const ProlongationSection& a, const EvalPoint& p) {
  const Frame frame(def, p, std::max(2, s.order_loss()));
  const LagrangianJets lj(frame, lagrangian);
  const SectionJet aj = a.at(frame);
  const Jet omega = CartanForm(frame, lj)(s.section(frame), aj);
  return omega.value() + anchor_prolongation(frame, aj, energy(frame, lj)).value();
}

double Trajectory::energy_drift() const {
  if (energy.empty()) return 0.0;
  const double e0 = energy.front();
  double drift = 0.0;
  for (double e : energy) drift = std::max(drift, std::abs(e - e0));
  return drift / std::max(1.0, std::abs(e0));
}

Trajectory integrate_sode(const AlgebroidDef& def, const Semispray& s, const std::vector<double>& x0,
                          const std::vector<double>& y0, double dt, int steps,
                          const std::optional<Expr>& lagrangian) {
  if (!(dt > 0.0)) throw ConfigError("/dt", "time step must be positive");
  if (steps < 1) throw ConfigError("/steps", "need at least one step");
  const int n = def.n, m = def.m;
  const int order = std::max(s.order_loss(), lagrangian ? 1 : 0);

  // Returns the time derivative; records E_L at the state when asked.
  auto rhs = [&](const EvalPoint& p, double* energy_out) {
    const Frame frame(def, p, order);
    Eigen::VectorXd d(n + m);
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (int a = 0; a < m; ++a) v += frame.sigma(i, a).value() * p.y[a];
      d(i) = v;
    }
    const JetVector sc = s.components(frame);
    for (int a = 0; a < m; ++a) d(n + a) = sc[a].value();
    if (energy_out) *energy_out = energy(frame, LagrangianJets(frame, *lagrangian)).value();
    return d;
  };
  auto shift = [&](const EvalPoint& p, const Eigen::VectorXd& k, double h) {
    EvalPoint q = p;
    for (int i = 0; i < n; ++i) q.x[i] += h * k(i);
    for (int a = 0; a < m; ++a) q.y[a] += h * k(n + a);
    return q;
  };

  Trajectory traj;
  traj.dt = dt;
  EvalPoint p{x0, y0};
  traj.times.push_back(0.0);
  traj.states.push_back(p);
  try {
    for (int step = 0; step < steps; ++step) {
      double e = 0.0;
      const Eigen::VectorXd k1 = rhs(p, lagrangian ? &e : nullptr);
      if (lagrangian) traj.energy.push_back(e);
      const Eigen::VectorXd k2 = rhs(shift(p, k1, dt / 2), nullptr);
      const Eigen::VectorXd k3 = rhs(shift(p, k2, dt / 2), nullptr);
      const Eigen::VectorXd k4 = rhs(shift(p, k3, dt), nullptr);
      p = shift(p, (k1 + 2 * k2 + 2 * k3 + k4) / 6.0, dt);
      traj.times.push_back((step + 1) * dt);
      traj.states.push_back(p);
    }
    if (lagrangian) {
      const Frame frame(def, p, 2);
      traj.energy.push_back(energy(frame, LagrangianJets(frame, *lagrangian)).value());
    }
  } catch (const DomainError& err) {
    traj.error = std::string(err.what()) + " at " + describe(p);
    if (lagrangian) traj.states.resize(std::min(traj.states.size(), traj.energy.size()));
    traj.energy.resize(lagrangian ? traj.states.size() : 0);
    traj.times.resize(traj.states.size());
  }
  return traj;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const std::size_t n = traj.states[0].x.size(), m = traj.states[0].y.size();
  const bool with_energy = !traj.energy.empty();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  for (std::size_t a = 1; a <= m; ++a) os << ",y" << a;
  if (with_energy) os << ",E";
  os << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    put(traj.times[k]);
    for (double v : traj.states[k].x) os << ',', put(v);
    for (double v : traj.states[k].y) os << ',', put(v);
    if (with_energy) os << ',', put(traj.energy[k]);
    os << "\n";
  }
  if (with_energy) {
    os << "# energy_drift=";
    put(traj.energy_drift());
    os << "\n";
  }
}

std::vector<double> euler_lagrange_residual(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p,
                                            const std::vector<double>& ydot) {
  const Frame frame(def, p, 2);
  const LagrangianJets lj(frame, lagrangian);
  const int n = def.n, m = def.m;
  std::vector<double> xdot(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) xdot[i] += frame.sigma(i, a).value() * p.y[a];
  std::vector<double> out(m);
  for (int a = 0; a < m; ++a) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) r += lj.dxy[i][a].value() * xdot[i];
    for (int b = 0; b < m; ++b) r += lj.g[a][b].value() * ydot[b];
    r -= frame.anchor_derivative(a, lj.L).value();
    for (int b = 0; b < m; ++b)
      for (int e = 0; e < m; ++e) r += frame.L(a, b, e).value() * p.y[b] * lj.dy[e].value();
    out[a] = r;
  }
  return out;
}

}  // namespace algmech
