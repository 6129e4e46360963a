#include "confball/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "confball/errors.hpp"
#include "json.hpp"

namespace confball {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  long row = 0;
  std::size_t width = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split(line);

    std::vector<double> values;
    values.reserve(fields.size());
    bool header = false;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        if (rows.empty() && !header && row == 1) {
          header = true;
          break;
        }
        throw ParseError("not a number: '" + std::string(fields[c]) + "' at row " +
                             std::to_string(row) + ", column " + std::to_string(c + 1),
                         row, static_cast<long>(c + 1));
      }
      if (!std::isfinite(*v)) {
        throw ParseError("non-finite value at row " + std::to_string(row) + ", column " +
                             std::to_string(c + 1),
                         row, static_cast<long>(c + 1));
      }
      values.push_back(*v);
    }
    if (header) {
      width = fields.size();
      continue;
    }
    if (width == 0) width = values.size();
    if (values.size() != width) {
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                           " fields, expected " + std::to_string(width),
                       row, static_cast<long>(std::min(values.size(), width) + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("no numeric rows", row, 0);

  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return out;
}

Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_file(path));
}

Eigen::VectorXd parse_vector_csv(std::string_view text) {
  const Eigen::MatrixXd m = parse_matrix_csv(text);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw DimensionError("expected a single column, got " + std::to_string(m.cols()) + " columns");
}

Eigen::VectorXd load_vector_csv(const std::filesystem::path& path) {
  return parse_vector_csv(read_file(path));
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double round_sig(double x, int digits) { return std::strtod(format_sig(x, digits).c_str(), nullptr); }

std::string format_exact(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_text(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

namespace {

using nlohmann::json;

const json& param_block(const json& entry) {
  if (auto it = entry.find("params"); it != entry.end()) {
    if (!it->is_object()) throw ConfigError("model params must be an object");
    return *it;
  }
  return entry;
}

template <class T>
T require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": \"" + key + "\" has the wrong type");
  }
}

std::vector<int> one_based_columns(const json& params, const std::string& where, Eigen::Index width) {
  const auto cols = require<std::vector<int>>(params, "columns", where);
  for (int c : cols) {
    if (c < 1 || c > width) throw ConfigError(where + ": column " + std::to_string(c) + " out of range");
  }
  return cols;
}

Eigen::MatrixXd pick(const Eigen::MatrixXd& x, const std::vector<int>& cols) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = x.col(cols[j] - 1);
  return out;
}

struct Pending {
  std::string id;
  Eigen::MatrixXd basis;  // orthonormal, empty for R^n
  bool full = false;
  std::optional<double> beta_m;
};

}  // namespace

FamilyConfig parse_family_config(std::string_view json_text, const std::filesystem::path& base_dir,
                                 std::optional<double> beta_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, static_cast<long>(e.byte));
  }
  if (!doc.is_object()) throw ConfigError("family config must be a JSON object");

  FamilyConfig out;
  const int n = require<int>(doc, "n", "config");
  if (n < 1) throw ConfigError("config: n must be >= 1");
  out.beta = beta_override ? *beta_override : require<double>(doc, "beta", "config");
  if (!(out.beta > 0.0 && out.beta < 1.0)) throw ConfigError("config: beta must lie in (0, 1)");
  if (doc.contains("alpha")) out.alpha = require<double>(doc, "alpha", "config");

  if (doc.contains("preset")) {
    const auto preset = require<std::string>(doc, "preset", "config");
    if (preset != "fourier-dyadic") throw ConfigError("config: unknown preset \"" + preset + "\"");
    out.family = std::make_shared<const ModelFamily>(fourier_family(n, require<int>(doc, "K", "config"), out.beta));
    return out;
  }

  const std::string allocation = doc.value("allocation", std::string("uniform"));
  if (allocation != "uniform" && allocation != "dimensional" && allocation != "explicit") {
    throw ConfigError("config: unknown allocation \"" + allocation + "\"");
  }
  const auto it = doc.find("models");
  if (it == doc.end() || !it->is_array()) throw ConfigError("config: \"models\" must be an array");

  std::map<std::string, Eigen::MatrixXd> csv_cache;
  auto load = [&](const std::string& rel) -> const Eigen::MatrixXd& {
    std::filesystem::path p(rel);
    if (p.is_relative()) p = base_dir / p;
    auto [pos, fresh] = csv_cache.try_emplace(p.string());
    if (fresh) pos->second = load_matrix_csv(p);
    if (pos->second.rows() != n) {
      throw DimensionError(p.string() + " has " + std::to_string(pos->second.rows()) + " rows, expected " +
                           std::to_string(n));
    }
    return pos->second;
  };

  std::vector<Pending> pending;
  for (const json& entry : *it) {
    if (!entry.is_object()) throw ConfigError("config: each model must be an object");
    Pending m;
    m.id = require<std::string>(entry, "id", "model");
    const std::string where = "model \"" + m.id + "\"";
    const auto source = require<std::string>(entry, "basis_source", where);
    const json& params = param_block(entry);
    if (source == "fourier") {
      m.basis = orthonormalize(fourier_design(n, require<int>(params, "m", where)));
    } else if (source == "columns-csv") {
      const Eigen::MatrixXd& raw = load(require<std::string>(params, "path", where));
      m.basis = orthonormalize(params.contains("columns") ? pick(raw, one_based_columns(params, where, raw.cols())) : raw);
    } else if (source == "subset") {
      const Eigen::MatrixXd& raw = load(require<std::string>(params, "design", where));
      m.basis = orthonormalize(pick(raw, one_based_columns(params, where, raw.cols())));
    } else if (source == "full") {
      m.full = true;
    } else {
      throw ConfigError(where + ": unknown basis_source \"" + source + "\"");
    }
    if (!m.full && m.basis.cols() == n) m.full = true;
    if (entry.contains("beta_m")) m.beta_m = require<double>(entry, "beta_m", where);
    pending.push_back(std::move(m));
  }
  if (std::none_of(pending.begin(), pending.end(), [](const Pending& p) { return p.full; })) {
    pending.push_back({std::to_string(n), Eigen::MatrixXd(), true, std::nullopt});
  }

  std::vector<double> levels(pending.size());
  if (allocation == "uniform") {
    levels = allocate_uniform(out.beta, static_cast<int>(pending.size()));
  } else if (allocation == "dimensional") {
    for (std::size_t i = 0; i < pending.size(); ++i) {
      levels[i] = pending[i].full ? out.beta / 2.0
                                  : dimensional_level(out.beta, n, static_cast<int>(pending[i].basis.cols()));
    }
  } else {
    double used = 0.0;
    std::size_t missing = 0;
    for (const auto& p : pending) {
      if (p.beta_m) used += *p.beta_m;
      else ++missing;
    }
    // an auto-appended R^n takes whatever level is left over
    if (missing > 1 || (missing == 1 && !(pending.back().full && !pending.back().beta_m))) {
      throw ConfigError("explicit allocation: every model needs beta_m");
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
      levels[i] = pending[i].beta_m ? *pending[i].beta_m : out.beta - used;
    }
  }

  std::vector<LinearModel> models;
  models.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!(levels[i] > 0.0)) throw ConfigError("model \"" + pending[i].id + "\": level must be > 0");
    models.push_back(pending[i].full ? LinearModel::full(pending[i].id, n, levels[i])
                                     : LinearModel::from_basis(pending[i].id, std::move(pending[i].basis), levels[i]));
  }
  out.family = std::make_shared<const ModelFamily>(n, out.beta, std::move(models));
  return out;
}

FamilyConfig load_family_config(const std::filesystem::path& path, std::optional<double> beta_override) {
  return parse_family_config(read_file(path), path.parent_path(), beta_override);
}

}  // namespace confball
