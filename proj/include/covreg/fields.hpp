#pragma once

#include "covreg/dataset.hpp"
#include "covreg/model.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace covreg {

/// Values on a lon/lat lattice; values(i, j) sits at (lon(j), lat(i)).
struct FieldGrid {
  Eigen::VectorXd lon;
  Eigen::VectorXd lat;
  Eigen::MatrixXd values;

  /// First row: label cell then the lon axis; each following row: lat, values.
  std::string to_csv() const;
};

/// A complete lattice of sites: row k of `design` is cell
/// (k / lon.size(), k % lon.size()).
struct LatticeDesign {
  Eigen::VectorXd lon;
  Eigen::VectorXd lat;
  Design design;
};

/// Reorders a dataset whose sites form a complete lon/lat lattice into
/// LatticeDesign order. Throws std::invalid_argument for incomplete lattices.
LatticeDesign lattice_from_dataset(const SpatialDataset &grid, const ModelSpec &spec);

struct FieldExport {
  FieldGrid variance;
  std::vector<FieldGrid> correlations; // one per reference point
  std::vector<Eigen::Index> reference_cells;
};

/// Process variance sigma0^2 exp{alpha_{-0}' x_{-0}(s)} on every cell, and
/// for each reference point (snapped to the nearest cell) the correlation
/// of Y(ref) with Y(s) over the lattice. The nugget is excluded.
FieldExport export_fields(const ParamState &state, const LatticeDesign &grid,
                          const ModelSpec &spec,
                          const std::vector<Eigen::Vector2d> &references);

/// Posterior mean of each parameter block. Psi and the stationary kernel are
/// averaged as matrices.
ParamState posterior_mean_state(const std::vector<ParamState> &draws, const ModelSpec &spec);

} // namespace covreg
