#include "dcdist/dcdistance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dcdist {

Metric metric_from_string(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  throw std::runtime_error("unknown metric: " + std::string(name));
}

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "cosine";
}

std::vector<ClassRepresentative> build_representatives(const CorpusMatrix& train,
                                                       std::size_t n_classes) {
  std::vector<ClassRepresentative> reps(n_classes);
  std::vector<std::size_t> members(n_classes, 0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    reps[c].class_id = c;
    reps[c].vector.assign(train.dim, 0.0);
  }
  for (std::size_t i = 0; i < train.rows.size(); ++i) {
    const std::size_t c = train.labels[i];
    if (c >= n_classes)
      throw std::runtime_error("row label " + std::to_string(c) + " out of range");
    members[c]++;
    for (const auto& [j, w] : train.rows[i].entries) reps[c].vector[j] += w;
  }
  for (std::size_t c = 0; c < n_classes; ++c)
    if (members[c] == 0)
      throw std::runtime_error("class " + std::to_string(c) + " has no training rows");
  return reps;
}

double dense_norm_squared(std::span<const double> v) {
  double sum = 0.0;
  for (const double x : v) sum += x * x;
  return sum;
}

double sparse_norm_squared(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& [j, w] : v.entries) sum += w * w;
  return sum;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::runtime_error("euclidean: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::runtime_error("cosine_distance: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double d = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(d, 0.0, 2.0);
}

double euclidean(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first == ib->first) {
      const double d = ia->second - ib->second;
      sum += d * d;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      sum += ia->second * ia->second;
      ++ia;
    } else {
      sum += ib->second * ib->second;
      ++ib;
    }
  }
  for (; ia != a.entries.end(); ++ia) sum += ia->second * ia->second;
  for (; ib != b.entries.end(); ++ib) sum += ib->second * ib->second;
  return std::sqrt(sum);
}

double cosine_distance(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first == ib->first) {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      ++ia;
    } else {
      ++ib;
    }
  }
  const double na = sparse_norm_squared(a);
  const double nb = sparse_norm_squared(b);
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double d = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(d, 0.0, 2.0);
}

double euclidean_to_dense(const SparseVector& a, std::span<const double> b,
                          double b_norm_squared) {
  // ||a - b||^2 = ||b||^2 + sum over stored entries of (a_j - b_j)^2 - b_j^2
  double sum = b_norm_squared;
  for (const auto& [j, w] : a.entries) {
    const double d = w - b[j];
    sum += d * d - b[j] * b[j];
  }
  return std::sqrt(std::max(sum, 0.0));
}

double cosine_distance_to_dense(const SparseVector& a, std::span<const double> b,
                                double b_norm_squared) {
  double dot = 0.0;
  for (const auto& [j, w] : a.entries) dot += w * b[j];
  const double na = sparse_norm_squared(a);
  if (na == 0.0 || b_norm_squared == 0.0) return 1.0;
  const double d = 1.0 - dot / (std::sqrt(na) * std::sqrt(b_norm_squared));
  return std::clamp(d, 0.0, 2.0);
}

DcdFeatures dcd_transform(const CorpusMatrix& matrix,
                          const std::vector<ClassRepresentative>& representatives,
                          Metric metric) {
  for (const ClassRepresentative& rep : representatives)
    if (rep.vector.size() != matrix.dim)
      throw std::runtime_error("dcd_transform: representative dimension " +
                               std::to_string(rep.vector.size()) + " does not match matrix " +
                               std::to_string(matrix.dim));

  std::vector<double> rep_norm_sq(representatives.size());
  for (std::size_t c = 0; c < representatives.size(); ++c)
    rep_norm_sq[c] = dense_norm_squared(representatives[c].vector);

  DcdFeatures features;
  features.metric = metric;
  features.rows.resize(matrix.rows.size());
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    std::vector<double>& out = features.rows[i];
    out.resize(representatives.size());
    for (std::size_t c = 0; c < representatives.size(); ++c) {
      const auto& rep = representatives[c].vector;
      out[c] = metric == Metric::euclidean
                   ? euclidean_to_dense(matrix.rows[i], rep, rep_norm_sq[c])
                   : cosine_distance_to_dense(matrix.rows[i], rep, rep_norm_sq[c]);
    }
  }
  return features;
}

CorpusMatrix to_matrix(const DcdFeatures& features, std::span<const std::size_t> labels) {
  CorpusMatrix matrix;
  matrix.dim = features.n_classes();
  matrix.rows.resize(features.rows.size());
  matrix.labels.assign(labels.begin(), labels.end());
  if (matrix.labels.empty()) matrix.labels.resize(features.rows.size(), 0);
  for (std::size_t i = 0; i < features.rows.size(); ++i)
    for (std::size_t c = 0; c < features.rows[i].size(); ++c)
      if (features.rows[i][c] != 0.0) matrix.rows[i].entries.emplace_back(c, features.rows[i][c]);
  return matrix;
}

std::string format_representatives(const std::vector<ClassRepresentative>& representatives,
                                   std::span<const std::string> class_names) {
  std::string out;
  char buf[64];
  for (const ClassRepresentative& rep : representatives) {
    out += rep.class_id < class_names.size() ? class_names[rep.class_id]
                                             : std::to_string(rep.class_id);
    out += '\t';
    bool first = true;
    for (std::size_t j = 0; j < rep.vector.size(); ++j) {
      if (rep.vector[j] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%s%zu:%.17g", first ? "" : " ", j, rep.vector[j]);
      out += buf;
      first = false;
    }
    out += '\n';
  }
  return out;
}

void save_representatives(const std::vector<ClassRepresentative>& representatives,
                          std::span<const std::string> class_names, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write representatives file: " + path);
  out << format_representatives(representatives, class_names);
}

}  // namespace dcdist
