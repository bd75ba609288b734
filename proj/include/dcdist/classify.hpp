// Brute-force k-nearest-neighbors and a nearest-centroid classifier, both
// over sparse rows.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcdist/dcdistance.hpp"
#include "dcdist/vectorizer.hpp"

namespace dcdist {

struct Prediction {
  std::string id;
  std::size_t predicted = 0;
  std::vector<std::pair<std::size_t, std::size_t>> votes;  // (class, neighbor count)
};

// Majority vote over the k nearest training rows. Distance ties at the k-th
// boundary go to the lower training-row index; vote ties go to the class
// whose nearest member comes first.
class KnnModel {
 public:
  KnnModel(CorpusMatrix train, int k, Metric metric);

  std::vector<Prediction> predict(const CorpusMatrix& queries,
                                  std::span<const std::string> ids = {}) const;

  int k() const { return k_; }
  Metric metric() const { return metric_; }

 private:
  CorpusMatrix train_;
  int k_;
  Metric metric_;
};

std::vector<Prediction> knn_predict(const KnnModel& model, const CorpusMatrix& queries,
                                    std::span<const std::string> ids = {});

// argmin distance to the class representatives; ties go to the lower class
// index. Distances match dcd_transform bit for bit.
std::vector<Prediction> centroid_predict(const std::vector<ClassRepresentative>& representatives,
                                         const CorpusMatrix& queries, Metric metric,
                                         std::span<const std::string> ids = {});

// "<doc id> TAB <gold> TAB <predicted>" per row; class indices are rendered
// through class_names when provided.
std::string format_predictions(std::span<const Prediction> predictions,
                               std::span<const std::size_t> golds,
                               std::span<const std::string> class_names);

}  // namespace dcdist
