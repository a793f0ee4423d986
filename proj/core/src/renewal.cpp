#include "ruinband/renewal.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "ruinband/error.hpp"
#include "ruinband/quadrature.hpp"

namespace ruinband {
namespace {

// Moments of the kernel against the two hat functions of each cell:
//   lower[k] = int_{x_k}^{x_k+1} f(x) (x_k+1 - x)/s dx
//   upper[k] = int_{x_k}^{x_k+1} f(x) (x - x_k)/s dx
struct CellMoments {
  std::vector<double> lower;
  std::vector<double> upper;
};

CellMoments cell_moments(const std::function<double(double)>& f, std::size_t cells, double step,
                         bool singular_at_zero) {
  CellMoments m{std::vector<double>(cells), std::vector<double>(cells)};
  if (cells == 0) return m;
  const quad::Tolerance tol{1e-15, 1e-12};
  auto lower_weight = [&](double x) { return f(x) * (step - x) / step; };
  auto upper_weight = [&](double x) { return f(x) * x / step; };
  if (singular_at_zero) {
    m.lower[0] = quad::integrate_endpoint_singular(lower_weight, 0.0, step, tol);
    m.upper[0] = quad::integrate_endpoint_singular(upper_weight, 0.0, step, tol);
  } else {
    m.lower[0] = quad::integrate(lower_weight, 0.0, step, tol);
    m.upper[0] = quad::integrate(upper_weight, 0.0, step, tol);
  }
  for (std::size_t k = 1; k < cells; ++k) {
    const double left = step * static_cast<double>(k);
    const double right = left + step;
    m.lower[k] = quad::gauss_legendre10([&](double x) { return f(x) * (right - x) / step; }, left, right);
    m.upper[k] = quad::gauss_legendre10([&](double x) { return f(x) * (x - left) / step; }, left, right);
  }
  return m;
}

// int_0^{u_n} y(u_n - x) f(x) dx for a grid function y, including the
// diagonal node y_n.
double convolve_at(const std::vector<double>& y, const CellMoments& m, std::size_t n) {
  if (n == 0) return 0.0;
  double sum = y[n] * m.lower[0] + y[0] * m.upper[n - 1];
  for (std::size_t j = 1; j < n; ++j) sum += y[n - j] * (m.lower[j] + m.upper[j - 1]);
  return sum;
}

// Marches y = y * g + forcing forward from u = 0.
std::vector<double> march(const CellMoments& g, const std::vector<double>& forcing) {
  const std::size_t nodes = forcing.size();
  std::vector<double> y(nodes, 0.0);
  y[0] = forcing[0];
  const double diag = 1.0 - g.lower[0];
  for (std::size_t n = 1; n < nodes; ++n) {
    double rhs = forcing[n] + y[0] * g.upper[n - 1];
    for (std::size_t j = 1; j < n; ++j) rhs += y[n - j] * (g.lower[j] + g.upper[j - 1]);
    y[n] = rhs / diag;
  }
  return y;
}

std::size_t cell_count(double u_max, double step) {
  if (!(u_max > 0.0) || !(step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "u_max and step must be > 0");
  }
  if (step > u_max / 100.0 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::StepTooCoarse,
                "step " + std::to_string(step) + " exceeds u_max/100 = " + std::to_string(u_max / 100.0));
  }
  return static_cast<std::size_t>(std::llround(u_max / step));
}

void require_npc(const ModelSpec& model) {
  if (!npc_check(model)) throw Error(ErrorCode::NpcViolated, "renewal equation is not defective");
}

GridFunction solve_psi_cells(const ModelSpec& model, std::size_t cells, double step) {
  const CellMoments g = cell_moments([&](double x) { return ladder_g(model, x); }, cells, step,
                                     kernel_singular_at_zero(model));
  std::vector<double> h(cells + 1);
  for (std::size_t n = 0; n <= cells; ++n) h[n] = ladder_h(model, step * static_cast<double>(n));
  return GridFunction{step, march(g, h)};
}

}  // namespace

double GridFunction::at(double u) const {
  const double last = u_max();
  if (!(u >= 0.0) || u > last * (1.0 + 1e-12)) {
    throw Error(ErrorCode::DomainError, "u = " + std::to_string(u) + " outside grid");
  }
  const double pos = std::min(u, last) / step;
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

GridFunction solve_psi(const ModelSpec& model, double u_max, double step) {
  const std::size_t cells = cell_count(u_max, step);
  require_npc(model);
  return solve_psi_cells(model, cells, step);
}

std::array<GridFunction, kThetaDim> solve_dot_psi(const ModelSpec& model, double u_max, double step) {
  const std::size_t cells = cell_count(u_max, step);
  require_npc(model);
  const bool singular = kernel_singular_at_zero(model);
  const CellMoments g = cell_moments([&](double x) { return ladder_g(model, x); }, cells, step, singular);

  std::vector<double> h(cells + 1);
  std::vector<ThetaVector> dh(cells + 1);
  for (std::size_t n = 0; n <= cells; ++n) {
    const double u = step * static_cast<double>(n);
    h[n] = ladder_h(model, u);
    dh[n] = grad_h(model, u);
  }
  const std::vector<double> psi = march(g, h);

  std::array<GridFunction, kThetaDim> out;
  const int free_dims = model.fixes_diffusion() ? kAlphaDim : kThetaDim;
  for (int i = 0; i < kThetaDim; ++i) {
    out[i] = GridFunction{step, std::vector<double>(cells + 1, 0.0)};
    if (i >= free_dims) continue;
    const CellMoments dg =
        cell_moments([&](double x) { return grad_g(model, x)[i]; }, cells, step, singular);
    std::vector<double> forcing(cells + 1);
    for (std::size_t n = 0; n <= cells; ++n) forcing[n] = dh[n][i] + convolve_at(psi, dg, n);
    out[i].values = march(g, forcing);
  }
  return out;
}

ThetaVector finite_diff_dot_psi(const ModelSpec& model, double u, double rel_step, double u_max,
                                double step) {
  if (!(rel_step >= 1e-6 && rel_step <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "rel_step must lie in [1e-6, 1e-2]");
  }
  const std::size_t cells = cell_count(u_max, step);
  require_npc(model);
  const ThetaVector theta = model.theta();
  const int free_dims = model.fixes_diffusion() ? kAlphaDim : kThetaDim;
  ThetaVector out = ThetaVector::Zero();
  for (int i = 0; i < free_dims; ++i) {
    const double delta = rel_step * theta[i];
    ThetaVector plus = theta;
    ThetaVector minus = theta;
    plus[i] += delta;
    minus[i] -= delta;
    const ModelSpec m_plus = ModelSpec::from_theta(model.family(), model.premium(), plus);
    const ModelSpec m_minus = ModelSpec::from_theta(model.family(), model.premium(), minus);
    if (!npc_check(m_plus) || !npc_check(m_minus)) {
      throw Error(ErrorCode::NpcViolated, "finite-difference stencil leaves the NPC region");
    }
    const double up = solve_psi_cells(m_plus, cells, step).at(u);
    const double down = solve_psi_cells(m_minus, cells, step).at(u);
    out[i] = (up - down) / (2.0 * delta);
  }
  return out;
}

}  // namespace ruinband
