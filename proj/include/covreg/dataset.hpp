#pragma once

#include "covreg/model.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace covreg {

struct StandardizationParam {
  std::string column;
  double mean = 0.0;
  double sd = 1.0;
};

/// Locations, named covariates and response for a set of sites.
///
/// The mean design is the intercept followed by `mean_terms`; a term is a
/// covariate name or a product such as "elev*slope". The covariance
/// covariates are the intercept followed by every covariate, in order.
struct SpatialDataset {
  Eigen::MatrixXd locations; // n x d
  std::vector<std::string> covariate_names;
  Eigen::MatrixXd covariates; // n x m, no intercept
  std::vector<std::string> mean_terms;
  Eigen::VectorXd response; // length n, or empty
  std::vector<StandardizationParam> standardization;

  Eigen::Index size() const { return locations.rows(); }
  int covariate_index(const std::string &name) const;

  Eigen::MatrixXd mean_design() const;
  std::vector<std::string> mean_design_names() const;
  Eigen::MatrixXd cov_covariates() const;
  std::vector<std::string> cov_covariate_names() const;

  SpatialDataset subset(const std::vector<Eigen::Index> &rows) const;
};

/// Column roles for delimited input.
struct Schema {
  std::string lon = "lon";
  std::string lat = "lat";
  std::string response; // empty: no response column
  std::vector<std::string> covariates;
  std::vector<std::string> mean_terms; // empty: every covariate
  bool log_response = false;
};

/// Reads comma-delimited text with a header row. Every cell used by the
/// schema must parse as a finite number; errors name the row and column.
SpatialDataset load_dataset(const std::string &path, const Schema &schema);

/// Writes lon, lat, covariates and (if present) response with 17 significant
/// digits.
void write_dataset(const std::string &path, const SpatialDataset &data,
                   const std::string &response_name = "response");

/// Standardizes the named covariates to mean 0, sd 1 (n - 1 denominator) and
/// records the parameters. A column that was already standardized gets a
/// composed record, so recorded parameters always map raw values.
SpatialDataset standardize_covariates(const SpatialDataset &data,
                                      const std::vector<std::string> &columns);

/// Applies recorded parameters (fitted elsewhere) to raw covariates.
SpatialDataset apply_standardization(const SpatialDataset &data,
                                     const std::vector<StandardizationParam> &params);

/// Inserts a covariate column at `position` (0 = first covariate).
SpatialDataset insert_covariate(const SpatialDataset &data, const std::string &name,
                                const Eigen::VectorXd &values, std::size_t position);

/// Design for `spec`: mean columns picked from mean_design(), variance and
/// kernel columns from cov_covariates() (intercept always first).
Design bind(const SpatialDataset &data, const ModelSpec &spec);

struct ElevationGrid {
  Eigen::VectorXd lon; // strictly increasing
  Eigen::VectorXd lat; // strictly increasing
  Eigen::MatrixXd values; // lat.size() x lon.size()

  void validate() const;
};

/// Grid file: the first row holds the longitude axis after one label cell;
/// each following row is a latitude followed by that row's elevations.
ElevationGrid load_elevation_grid(const std::string &path);

/// Elevation of the grid cell nearest to (lon, lat). Off-grid queries clamp
/// to the boundary cell with a warning.
double nearest_elevation(const ElevationGrid &grid, double lon, double lat);

/// East minus west elevation difference at +/- delta_lon.
double compute_slope_gradient(const ElevationGrid &grid, double lon, double lat,
                              double delta_lon = 5.0 / 6.0);

} // namespace covreg
