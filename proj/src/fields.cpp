#include "covreg/fields.hpp"

#include "covreg/covariance.hpp"
#include "covreg/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace covreg {

std::string FieldGrid::to_csv() const {
  std::ostringstream out;
  out << "lat\\lon";
  for (Eigen::Index j = 0; j < lon.size(); ++j) {
    out << ',' << format_double(lon(j));
  }
  out << '\n';
  for (Eigen::Index i = 0; i < lat.size(); ++i) {
    out << format_double(lat(i));
    for (Eigen::Index j = 0; j < lon.size(); ++j) {
      out << ',' << format_double(values(i, j));
    }
    out << '\n';
  }
  return out.str();
}

namespace {

Eigen::VectorXd unique_sorted(const Eigen::VectorXd &v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return Eigen::Map<Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
}

Eigen::Index axis_position(const Eigen::VectorXd &axis, double v) {
  const double *b = axis.data();
  const double *it = std::lower_bound(b, b + axis.size(), v);
  return it - b;
}

Eigen::Index nearest_on_axis(const Eigen::VectorXd &axis, double v) {
  const Eigen::Index n = axis.size();
  const Eigen::Index hi = axis_position(axis, v);
  if (hi == 0) {
    return 0;
  }
  if (hi == n) {
    return n - 1;
  }
  return (v - axis(hi - 1) <= axis(hi) - v) ? hi - 1 : hi;
}

} // namespace

LatticeDesign lattice_from_dataset(const SpatialDataset &grid, const ModelSpec &spec) {
  LatticeDesign out;
  out.lon = unique_sorted(grid.locations.col(0));
  out.lat = unique_sorted(grid.locations.col(1));
  const Eigen::Index nlon = out.lon.size();
  const Eigen::Index cells = nlon * out.lat.size();
  if (cells != grid.size()) {
    throw std::invalid_argument("map grid: sites do not form a complete lon/lat lattice");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(cells), -1);
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const Eigen::Index cell = axis_position(out.lat, grid.locations(k, 1)) * nlon +
                              axis_position(out.lon, grid.locations(k, 0));
    if (order[static_cast<std::size_t>(cell)] != -1) {
      throw std::invalid_argument("map grid: duplicate lattice site");
    }
    order[static_cast<std::size_t>(cell)] = k;
  }
  out.design = bind(grid.subset(order), spec);
  return out;
}

FieldExport export_fields(const ParamState &state, const LatticeDesign &grid,
                          const ModelSpec &spec,
                          const std::vector<Eigen::Vector2d> &references) {
  const Eigen::Index nlon = grid.lon.size();
  const Eigen::Index nlat = grid.lat.size();
  const Design &d = grid.design;
  if (d.size() != nlon * nlat) {
    throw std::invalid_argument("export_fields: design does not match the lattice");
  }
  FieldExport out;
  Eigen::VectorXd var(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    var(k) = process_variance(d.var_x.row(k).transpose(), state.sigma0_sq, state.alpha_rest);
  }
  auto to_grid = [&](const Eigen::VectorXd &v) {
    FieldGrid g{grid.lon, grid.lat, Eigen::MatrixXd(nlat, nlon)};
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      g.values(k / nlon, k % nlon) = v(k);
    }
    return g;
  };
  out.variance = to_grid(var);

  for (const Eigen::Vector2d &ref : references) {
    if (!ref.allFinite()) {
      throw std::invalid_argument("export_fields: reference point is not finite");
    }
    const Eigen::Index cell =
        nearest_on_axis(grid.lat, ref(1)) * nlon + nearest_on_axis(grid.lon, ref(0));
    const Design one = d.subset({cell});
    const Eigen::VectorXd cov = build_cov_matrix(one, d, spec, state).row(0).transpose();
    Eigen::VectorXd corr(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      corr(k) = std::clamp(cov(k) / std::sqrt(var(cell) * var(k)), -1.0, 1.0);
    }
    corr(cell) = 1.0;
    out.correlations.push_back(to_grid(corr));
    out.reference_cells.push_back(cell);
  }
  return out;
}

ParamState posterior_mean_state(const std::vector<ParamState> &draws, const ModelSpec &spec) {
  if (draws.empty()) {
    throw std::invalid_argument("posterior_mean_state: empty chain");
  }
  const double l = static_cast<double>(draws.size());
  ParamState m = draws.front();
  m.beta.setZero();
  m.alpha_rest.setZero();
  m.kernel.gamma.setZero();
  m.tau_sq = 0.0;
  m.sigma0_sq = 0.0;
  Eigen::MatrixXd kmat = Eigen::MatrixXd::Zero(2, 2);
  for (const ParamState &s : draws) {
    m.beta += s.beta;
    m.alpha_rest += s.alpha_rest;
    m.kernel.gamma += s.kernel.gamma;
    m.tau_sq += s.tau_sq;
    m.sigma0_sq += s.sigma0_sq;
    if (spec.kind == ModelKind::stationary) {
      kmat += stationary_kernel_matrix(s.stationary);
    } else {
      kmat.topLeftCorner(s.kernel.dim(), s.kernel.dim()) += s.kernel.psi();
    }
  }
  m.beta /= l;
  m.alpha_rest /= l;
  m.kernel.gamma /= l;
  m.tau_sq /= l;
  m.sigma0_sq /= l;
  kmat /= l;
  if (spec.kind == ModelKind::stationary) {
    m.stationary = stationary_kernel_from_matrix(kmat);
  } else {
    const Eigen::Index dd = m.kernel.dim();
    m.kernel.set_psi(kmat.topLeftCorner(dd, dd));
  }
  m.y_latent.resize(0);
  return m;
}

} // namespace covreg
