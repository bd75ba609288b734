// Distance-to-class-representative feature extraction: one representative
// vector per class, built by summing the training rows of that class, and a
// k-column feature matrix holding each document's distance to every
// representative.
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcdist/vectorizer.hpp"

namespace dcdist {

enum class Metric { euclidean, cosine };

Metric metric_from_string(std::string_view name);
std::string_view to_string(Metric metric);

struct ClassRepresentative {
  std::size_t class_id = 0;
  std::vector<double> vector;  // dense, length = matrix dim
};

struct DcdFeatures {
  std::vector<std::vector<double>> rows;  // one entry per class, corpus class order
  Metric metric = Metric::euclidean;

  std::size_t n_classes() const { return rows.empty() ? 0 : rows.front().size(); }
};

// Element-wise sum of the training rows of each class. Built from training
// rows only; errors if some class has no training row.
std::vector<ClassRepresentative> build_representatives(const CorpusMatrix& train,
                                                       std::size_t n_classes);

// Maps every row to its vector of distances from the k representatives. The
// output width is always the number of classes, whatever the input
// dimension.
DcdFeatures dcd_transform(const CorpusMatrix& matrix,
                          const std::vector<ClassRepresentative>& representatives,
                          Metric metric);

double euclidean(std::span<const double> a, std::span<const double> b);
// 1 - cosine similarity, in [0, 2]; defined as 1 when either vector is zero.
double cosine_distance(std::span<const double> a, std::span<const double> b);

// Sparse counterparts; absent entries are zeros.
double euclidean(const SparseVector& a, const SparseVector& b);
double cosine_distance(const SparseVector& a, const SparseVector& b);

double dense_norm_squared(std::span<const double> v);
double sparse_norm_squared(const SparseVector& v);

// Distance from a sparse row to a dense vector whose squared norm has been
// precomputed; every stored entry of the row is touched exactly once. Both
// the feature transform and the nearest-centroid classifier go through
// these, so their distances agree bit for bit.
double euclidean_to_dense(const SparseVector& a, std::span<const double> b,
                          double b_norm_squared);
double cosine_distance_to_dense(const SparseVector& a, std::span<const double> b,
                                double b_norm_squared);

// The dense feature rows as a sparse matrix (dim = number of classes), for
// classifiers that consume CorpusMatrix.
CorpusMatrix to_matrix(const DcdFeatures& features, std::span<const std::size_t> labels);

// Export format: "<class> TAB <col>:<value> ..." with nonzero entries only.
void save_representatives(const std::vector<ClassRepresentative>& representatives,
                          std::span<const std::string> class_names, const std::string& path);
std::string format_representatives(const std::vector<ClassRepresentative>& representatives,
                                   std::span<const std::string> class_names);

}  // namespace dcdist
