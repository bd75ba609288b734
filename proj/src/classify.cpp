#include "dcdist/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dcdist {

KnnModel::KnnModel(CorpusMatrix train, int k, Metric metric)
    : train_(std::move(train)), k_(k), metric_(metric) {
  if (train_.rows.empty()) throw std::runtime_error("knn: empty training set");
  if (k_ < 1 || static_cast<std::size_t>(k_) > train_.rows.size())
    throw std::runtime_error("knn: k=" + std::to_string(k_) + " with " +
                             std::to_string(train_.rows.size()) + " training rows");
}

std::vector<Prediction> KnnModel::predict(const CorpusMatrix& queries,
                                          std::span<const std::string> ids) const {
  if (queries.dim != train_.dim)
    throw std::runtime_error("knn: query dimension " + std::to_string(queries.dim) +
                             " does not match training dimension " +
                             std::to_string(train_.dim));

  const std::size_t kk = static_cast<std::size_t>(k_);
  std::vector<Prediction> out;
  out.reserve(queries.rows.size());
  std::vector<std::pair<double, std::size_t>> nearest;  // (distance, train row)
  for (std::size_t q = 0; q < queries.rows.size(); ++q) {
    const SparseVector& query = queries.rows[q];
    nearest.clear();
    nearest.reserve(train_.rows.size());
    for (std::size_t i = 0; i < train_.rows.size(); ++i) {
      const double d = metric_ == Metric::euclidean ? euclidean(query, train_.rows[i])
                                                    : cosine_distance(query, train_.rows[i]);
      nearest.emplace_back(d, i);
    }
    // lexicographic order = distance, then training-row index
    std::partial_sort(nearest.begin(), nearest.begin() + static_cast<std::ptrdiff_t>(kk),
                      nearest.end());

    std::map<std::size_t, std::size_t> votes;
    for (std::size_t r = 0; r < kk; ++r) votes[train_.labels[nearest[r].second]]++;
    std::size_t best_count = 0;
    for (const auto& [cls, count] : votes) best_count = std::max(best_count, count);
    std::size_t winner = 0;
    for (std::size_t r = 0; r < kk; ++r) {  // first class reaching the top count
      const std::size_t cls = train_.labels[nearest[r].second];
      if (votes[cls] == best_count) {
        winner = cls;
        break;
      }
    }

    Prediction pred;
    pred.id = q < ids.size() ? ids[q] : std::to_string(q);
    pred.predicted = winner;
    pred.votes.assign(votes.begin(), votes.end());
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<Prediction> knn_predict(const KnnModel& model, const CorpusMatrix& queries,
                                    std::span<const std::string> ids) {
  return model.predict(queries, ids);
}

std::vector<Prediction> centroid_predict(const std::vector<ClassRepresentative>& representatives,
                                         const CorpusMatrix& queries, Metric metric,
                                         std::span<const std::string> ids) {
  if (representatives.empty()) throw std::runtime_error("centroid: no representatives");
  for (const ClassRepresentative& rep : representatives)
    if (rep.vector.size() != queries.dim)
      throw std::runtime_error("centroid: representative dimension " +
                               std::to_string(rep.vector.size()) +
                               " does not match query dimension " +
                               std::to_string(queries.dim));

  std::vector<double> rep_norm_sq(representatives.size());
  for (std::size_t c = 0; c < representatives.size(); ++c)
    rep_norm_sq[c] = dense_norm_squared(representatives[c].vector);

  std::vector<Prediction> out;
  out.reserve(queries.rows.size());
  for (std::size_t q = 0; q < queries.rows.size(); ++q) {
    std::size_t best = 0;
    double best_dist = 0.0;
    for (std::size_t c = 0; c < representatives.size(); ++c) {
      const auto& rep = representatives[c].vector;
      const double d = metric == Metric::euclidean
                           ? euclidean_to_dense(queries.rows[q], rep, rep_norm_sq[c])
                           : cosine_distance_to_dense(queries.rows[q], rep, rep_norm_sq[c]);
      if (c == 0 || d < best_dist) {
        best = c;
        best_dist = d;
      }
    }
    Prediction pred;
    pred.id = q < ids.size() ? ids[q] : std::to_string(q);
    pred.predicted = best;
    pred.votes = {{best, 1}};
    out.push_back(std::move(pred));
  }
  return out;
}

std::string format_predictions(std::span<const Prediction> predictions,
                               std::span<const std::size_t> golds,
                               std::span<const std::string> class_names) {
  auto name = [&class_names](std::size_t cls) {
    return cls < class_names.size() ? class_names[cls] : std::to_string(cls);
  };
  std::string out;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out += predictions[i].id;
    out += '\t';
    out += i < golds.size() ? name(golds[i]) : "?";
    out += '\t';
    out += name(predictions[i].predicted);
    out += '\n';
  }
  return out;
}

}  // namespace dcdist
