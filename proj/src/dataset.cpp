#include "covreg/dataset.hpp"

#include "covreg/io.hpp"
#include "covreg/log.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace covreg {

int SpatialDataset::covariate_index(const std::string &name) const {
  for (std::size_t i = 0; i < covariate_names.size(); ++i) {
    if (covariate_names[i] == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

namespace {

std::vector<std::string> term_factors(const std::string &term) {
  std::vector<std::string> out = split(term, '*');
  for (const auto &f : out) {
    if (f.empty()) {
      throw std::invalid_argument("mean term '" + term + "' has an empty factor");
    }
  }
  return out;
}

} // namespace

Eigen::MatrixXd SpatialDataset::mean_design() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(mean_terms.size()) + 1);
  x.col(0).setOnes();
  for (std::size_t t = 0; t < mean_terms.size(); ++t) {
    Eigen::VectorXd col = Eigen::VectorXd::Ones(n);
    for (const auto &f : term_factors(mean_terms[t])) {
      const int idx = covariate_index(f);
      if (idx < 0) {
        throw std::invalid_argument("mean term refers to unknown covariate '" + f + "'");
      }
      col = col.cwiseProduct(covariates.col(idx));
    }
    x.col(static_cast<Eigen::Index>(t) + 1) = col;
  }
  return x;
}

std::vector<std::string> SpatialDataset::mean_design_names() const {
  std::vector<std::string> out{"intercept"};
  out.insert(out.end(), mean_terms.begin(), mean_terms.end());
  return out;
}

Eigen::MatrixXd SpatialDataset::cov_covariates() const {
  Eigen::MatrixXd x(size(), covariates.cols() + 1);
  x.col(0).setOnes();
  x.rightCols(covariates.cols()) = covariates;
  return x;
}

std::vector<std::string> SpatialDataset::cov_covariate_names() const {
  std::vector<std::string> out{"intercept"};
  out.insert(out.end(), covariate_names.begin(), covariate_names.end());
  return out;
}

SpatialDataset SpatialDataset::subset(const std::vector<Eigen::Index> &rows) const {
  SpatialDataset out = *this;
  const auto n = static_cast<Eigen::Index>(rows.size());
  out.locations.resize(n, locations.cols());
  out.covariates.resize(n, covariates.cols());
  out.response.resize(response.size() > 0 ? n : 0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index r = rows[static_cast<std::size_t>(k)];
    if (r < 0 || r >= size()) {
      throw std::out_of_range("SpatialDataset::subset: row out of range");
    }
    out.locations.row(k) = locations.row(r);
    out.covariates.row(k) = covariates.row(r);
    if (response.size() > 0) {
      out.response(k) = response(r);
    }
  }
  return out;
}

SpatialDataset load_dataset(const std::string &path, const Schema &schema) {
  const CsvTable t = read_csv(path);
  const std::size_t lon = t.column(schema.lon, path);
  const std::size_t lat = t.column(schema.lat, path);
  std::vector<std::size_t> cov_cols;
  for (const auto &c : schema.covariates) {
    cov_cols.push_back(t.column(c, path));
  }
  const bool has_response = !schema.response.empty();
  const std::size_t resp = has_response ? t.column(schema.response, path) : 0;

  const auto n = static_cast<Eigen::Index>(t.rows.size());
  if (n < 1) {
    throw ParseError(path + ": no data rows");
  }
  SpatialDataset ds;
  ds.locations.resize(n, 2);
  ds.covariates.resize(n, static_cast<Eigen::Index>(cov_cols.size()));
  ds.covariate_names = schema.covariates;
  ds.mean_terms = schema.mean_terms.empty() ? schema.covariates : schema.mean_terms;
  if (has_response) {
    ds.response.resize(n);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &row = t.rows[static_cast<std::size_t>(i)];
    const auto r = static_cast<std::size_t>(i) + 1;
    ds.locations(i, 0) = parse_cell(row[lon], path, r, schema.lon);
    ds.locations(i, 1) = parse_cell(row[lat], path, r, schema.lat);
    for (std::size_t c = 0; c < cov_cols.size(); ++c) {
      ds.covariates(i, static_cast<Eigen::Index>(c)) =
          parse_cell(row[cov_cols[c]], path, r, schema.covariates[c]);
    }
    if (has_response) {
      double v = parse_cell(row[resp], path, r, schema.response);
      if (schema.log_response) {
        if (!(v > 0.0)) {
          throw ParseError(path + ": row " + std::to_string(r) + ", column '" +
                           schema.response + "': log transform needs a positive value");
        }
        v = std::log(v);
      }
      ds.response(i) = v;
    }
  }
  ds.mean_design(); // rejects unknown mean terms early
  return ds;
}

void write_dataset(const std::string &path, const SpatialDataset &data,
                   const std::string &response_name) {
  std::ostringstream out;
  out << "lon,lat";
  for (const auto &c : data.covariate_names) {
    out << ',' << c;
  }
  if (data.response.size() > 0) {
    out << ',' << response_name;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out << format_double(data.locations(i, 0)) << ',' << format_double(data.locations(i, 1));
    for (Eigen::Index c = 0; c < data.covariates.cols(); ++c) {
      out << ',' << format_double(data.covariates(i, c));
    }
    if (data.response.size() > 0) {
      out << ',' << format_double(data.response(i));
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

SpatialDataset standardize_covariates(const SpatialDataset &data,
                                      const std::vector<std::string> &columns) {
  SpatialDataset out = data;
  const double n = static_cast<double>(data.size());
  if (data.size() < 2) {
    throw std::invalid_argument("standardize: need at least two rows");
  }
  for (const auto &name : columns) {
    const int idx = data.covariate_index(name);
    if (idx < 0) {
      throw std::invalid_argument("standardize: unknown covariate '" + name + "'");
    }
    auto col = out.covariates.col(idx);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / (n - 1.0));
    if (!(sd > 0.0)) {
      throw std::invalid_argument("standardize: covariate '" + name + "' is constant");
    }
    col = ((col.array() - mean) / sd).matrix();
    auto it = std::find_if(out.standardization.begin(), out.standardization.end(),
                           [&](const StandardizationParam &p) { return p.column == name; });
    if (it == out.standardization.end()) {
      out.standardization.push_back({name, mean, sd});
    } else {
      it->mean += mean * it->sd;
      it->sd *= sd;
    }
  }
  return out;
}

SpatialDataset apply_standardization(const SpatialDataset &data,
                                     const std::vector<StandardizationParam> &params) {
  SpatialDataset out = data;
  for (const auto &p : params) {
    const int idx = data.covariate_index(p.column);
    if (idx < 0) {
      throw std::invalid_argument("standardize: unknown covariate '" + p.column + "'");
    }
    if (!(p.sd > 0.0)) {
      throw std::invalid_argument("standardize: recorded sd must be positive");
    }
    out.covariates.col(idx) = ((out.covariates.col(idx).array() - p.mean) / p.sd).matrix();
  }
  out.standardization = params;
  return out;
}

SpatialDataset insert_covariate(const SpatialDataset &data, const std::string &name,
                                const Eigen::VectorXd &values, std::size_t position) {
  if (values.size() != data.size()) {
    throw std::invalid_argument("insert_covariate: length mismatch");
  }
  if (data.covariate_index(name) >= 0) {
    throw std::invalid_argument("insert_covariate: '" + name + "' already present");
  }
  const auto m = data.covariates.cols();
  const auto pos = static_cast<Eigen::Index>(std::min<std::size_t>(position, m));
  SpatialDataset out = data;
  out.covariates.resize(data.size(), m + 1);
  out.covariates.leftCols(pos) = data.covariates.leftCols(pos);
  out.covariates.col(pos) = values;
  out.covariates.rightCols(m - pos) = data.covariates.rightCols(m - pos);
  out.covariate_names.insert(out.covariate_names.begin() + pos, name);
  return out;
}

Design bind(const SpatialDataset &data, const ModelSpec &spec) {
  const Eigen::MatrixXd mean_all = data.mean_design();
  const Eigen::MatrixXd cov_all = data.cov_covariates();
  spec.validate(static_cast<int>(mean_all.cols()), static_cast<int>(cov_all.cols()));
  const Eigen::Index n = data.size();
  Design d;
  d.coords = data.locations;
  d.mean_x.resize(n, static_cast<Eigen::Index>(spec.mean_covariates.size()));
  for (std::size_t k = 0; k < spec.mean_covariates.size(); ++k) {
    d.mean_x.col(static_cast<Eigen::Index>(k)) = mean_all.col(spec.mean_covariates[k]);
  }
  auto pick = [&](const std::vector<int> &cols) {
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(cols.size()) + 1);
    m.col(0).setOnes();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      m.col(static_cast<Eigen::Index>(k) + 1) = cov_all.col(cols[k]);
    }
    return m;
  };
  d.var_x = pick(spec.variance_covariates);
  d.kern_x = pick(spec.kernel_covariates);
  d.response = data.response;
  return d;
}

void ElevationGrid::validate() const {
  if (lon.size() < 1 || lat.size() < 1) {
    throw std::invalid_argument("elevation grid: empty axis");
  }
  if (values.rows() != lat.size() || values.cols() != lon.size()) {
    throw std::invalid_argument("elevation grid: values do not match axes");
  }
  for (Eigen::Index i = 1; i < lon.size(); ++i) {
    if (!(lon(i) > lon(i - 1))) {
      throw std::invalid_argument("elevation grid: longitude axis not strictly increasing");
    }
  }
  for (Eigen::Index i = 1; i < lat.size(); ++i) {
    if (!(lat(i) > lat(i - 1))) {
      throw std::invalid_argument("elevation grid: latitude axis not strictly increasing");
    }
  }
}

ElevationGrid load_elevation_grid(const std::string &path) {
  const CsvTable t = read_csv(path);
  ElevationGrid g;
  const std::size_t nlon = t.header.size() - 1;
  g.lon.resize(static_cast<Eigen::Index>(nlon));
  for (std::size_t j = 0; j < nlon; ++j) {
    g.lon(static_cast<Eigen::Index>(j)) = parse_cell(t.header[j + 1], path, 0, "header");
  }
  g.lat.resize(static_cast<Eigen::Index>(t.rows.size()));
  g.values.resize(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(nlon));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto &row = t.rows[i];
    g.lat(static_cast<Eigen::Index>(i)) = parse_cell(row[0], path, i + 1, t.header[0]);
    for (std::size_t j = 0; j < nlon; ++j) {
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_cell(row[j + 1], path, i + 1, t.header[j + 1]);
    }
  }
  g.validate();
  return g;
}

namespace {

Eigen::Index nearest_index(const Eigen::VectorXd &axis, double v, const char *what) {
  const Eigen::Index n = axis.size();
  if (v < axis(0) || v > axis(n - 1)) {
    warn(std::string("elevation lookup: ") + what + " " + std::to_string(v) +
         " outside grid, clamped to the boundary cell");
  }
  const double *b = axis.data();
  const double *it = std::lower_bound(b, b + n, v);
  if (it == b) {
    return 0;
  }
  if (it == b + n) {
    return n - 1;
  }
  const Eigen::Index hi = it - b;
  return (v - axis(hi - 1) <= axis(hi) - v) ? hi - 1 : hi;
}

} // namespace

double nearest_elevation(const ElevationGrid &grid, double lon, double lat) {
  return grid.values(nearest_index(grid.lat, lat, "latitude"),
                     nearest_index(grid.lon, lon, "longitude"));
}

double compute_slope_gradient(const ElevationGrid &grid, double lon, double lat,
                              double delta_lon) {
  if (!(delta_lon > 0.0)) {
    throw std::invalid_argument("slope: delta_lon must be positive");
  }
  return nearest_elevation(grid, lon + delta_lon, lat) -
         nearest_elevation(grid, lon - delta_lon, lat);
}

} // namespace covreg
