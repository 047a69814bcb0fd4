#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "mdg/evaluate.hpp"
#include "mdg/knn.hpp"
#include "mdg/pipeline.hpp"
#include "mdg/svm.hpp"

using namespace mdg;
using test::thrown_code;

namespace {

// Gaussian blobs around per-class centres spaced `gap` apart on each axis.
LabeledDataset blobs(std::size_t classes, std::size_t per_class, std::size_t dim, double gap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  LabeledDataset d;
  for (std::size_t j = 0; j < dim; ++j) d.columns.push_back("x" + std::to_string(j));
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      Sample s;
      for (std::size_t j = 0; j < dim; ++j) s.features.push_back(gap * static_cast<double>((c + j) % classes) + g(rng));
      s.label = static_cast<int>(c) + 1;
      s.source_id = std::to_string(c) + "_" + std::to_string(i);
      d.samples.push_back(std::move(s));
    }
  }
  return d;
}

// Exhaustive kNN: sort every training point by (distance, index), count labels
// among the first k, break vote ties by summed distance then label.
int oracle_knn(const LabeledDataset& train, std::span<const double> q, std::size_t k, Metric m) {
  const FeatureDistance dist{m, 6400.0};
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < train.size(); ++i) all.emplace_back(dist(train.samples[i].features, q), i);
  std::sort(all.begin(), all.end());
  std::map<int, std::pair<std::size_t, double>> votes;
  for (std::size_t i = 0; i < k; ++i) {
    auto& v = votes[train.samples[all[i].second].label];
    ++v.first;
    v.second += all[i].first;
  }
  int best = 0;
  std::pair<std::size_t, double> bv{0, 0.0};
  for (const auto& [label, v] : votes) {
    if (v.first > bv.first || (v.first == bv.first && v.second < bv.second)) {
      best = label;
      bv = v;
    }
  }
  return best;
}

class ConstantPipeline : public Pipeline {
 public:
  explicit ConstantPipeline(int label) : label_(label) {}
  std::string name() const override { return "constant"; }
  std::vector<int> fit_predict(const LabeledDataset&, std::span<const std::size_t>,
                               std::span<const std::size_t> test) const override {
    return std::vector<int>(test.size(), label_);
  }

 private:
  int label_;
};

}  // namespace

TEST_CASE("kNN agrees with an exhaustive search") {
  const LabeledDataset train = blobs(4, 15, 6, 1.0, 1);
  const LabeledDataset queries = blobs(4, 10, 6, 1.0, 2);
  for (Metric m : {Metric::kL1, Metric::kL2, Metric::kEmd}) {
    for (std::size_t k : {1u, 3u, 5u}) {
      const KnnConfig cfg{k, m, 6400.0};
      for (const Sample& q : queries.samples) CHECK(knn_classify(train, q.features, cfg) == oracle_knn(train, q.features, k, m));
    }
  }
}

TEST_CASE("kNN tie rules") {
  // Equidistant neighbours: the earlier training sample wins at k = 1.
  CHECK(knn_vote({{1.0, 0, 7}, {1.0, 1, 2}}, 1) == 7);
  CHECK(knn_vote({{1.0, 1, 2}, {1.0, 0, 7}}, 1) == 7);
  // Vote tie: smaller summed distance wins, then smaller label.
  CHECK(knn_vote({{0.1, 0, 5}, {0.2, 1, 3}, {0.3, 2, 3}, {0.35, 3, 5}}, 4) == 5);
  CHECK(knn_vote({{0.1, 0, 5}, {0.2, 1, 3}, {0.2, 2, 3}, {0.3, 3, 5}}, 4) == 3);
  // k = 3, two votes beat one nearer.
  CHECK(knn_vote({{0.1, 0, 1}, {0.2, 1, 2}, {0.3, 2, 2}}, 3) == 2);

  CHECK(thrown_code([] { knn_vote({}, 1); }) == ErrorCode::kEmptyTraining);
  CHECK(thrown_code([] { knn_vote({{0.1, 0, 1}}, 2); }) == ErrorCode::kBadConfig);
  const LabeledDataset empty;
  const std::vector<double> q{1.0};
  CHECK(thrown_code([&] { knn_classify(empty, q, {}); }) == ErrorCode::kEmptyTraining);
}

TEST_CASE("1-NN recalls its own training samples") {
  const LabeledDataset d = blobs(3, 10, 4, 3.0, 3);
  for (const Sample& s : d.samples) CHECK(knn_classify(d, s.features, {}) == s.label);
}

TEST_CASE("SVM separates linearly separable classes") {
  const LabeledDataset d = blobs(3, 30, 3, 8.0, 4);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (const Sample& s : d.samples) {
    x.push_back(s.features);
    y.push_back(s.label);
  }
  const Standardizer st = Standardizer::fit(x);
  std::vector<std::vector<double>> z;
  for (const auto& r : x) z.push_back(st.apply(r));
  const SvmModel m = svm_train(z, y);
  CHECK(m.classes == std::vector<int>{1, 2, 3});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < z.size(); ++i) correct += svm_predict(m, z[i]) == y[i];
  CHECK(correct >= z.size() - 1);

  // Same seed, same model.
  const SvmModel again = svm_train(z, y);
  CHECK(again.weights == m.weights);
  CHECK(again.bias == m.bias);
}

TEST_CASE("SVM edge cases") {
  const std::vector<std::vector<double>> x{{1.0}, {2.0}};
  const std::vector<int> one{4, 4};
  CHECK(thrown_code([&] { svm_train(x, one); }) == ErrorCode::kSingleClass);
  const std::vector<int> two{4, 9};
  CHECK(thrown_code([&] { svm_train(x, two, SvmConfig{0.0, 10, 1}); }) == ErrorCode::kBadConfig);

  // Identical inputs: every score ties and the smallest label wins.
  const std::vector<std::vector<double>> same{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  const std::vector<int> y{9, 4, 6};
  const SvmModel m = svm_train(same, y);
  CHECK(m.degenerate);
  const std::vector<double> probe{1.0, 1.0};
  CHECK(svm_predict(m, probe) == 4);
}

TEST_CASE("standardizer") {
  const std::vector<std::vector<double>> rows{{1.0, 5.0}, {3.0, 5.0}, {5.0, 5.0}};
  const Standardizer s = Standardizer::fit(rows);
  CHECK(s.mean[0] == doctest::Approx(3.0));
  CHECK(s.scale[1] == 1.0);
  const auto z = s.apply(rows[2]);
  CHECK(z[1] == 0.0);
  double sq = 0.0;
  for (const auto& r : rows) sq += std::pow(s.apply(r)[0], 2);
  CHECK(sq / 3.0 == doctest::Approx(1.0).epsilon(0.5));
}

TEST_CASE("confusion matrix") {
  ConfusionMatrix c({1, 2, 3});
  c.add(1, 1);
  c.add(1, 2);
  c.add(2, 2);
  c.add(3, 3);
  CHECK(c.total() == 4);
  CHECK(c.accuracy() == doctest::Approx(0.75));
  const auto r = c.row_normalized();
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(r[1] == doctest::Approx(0.5));
  CHECK(r[4] == 1.0);
  CHECK(r[8] == 1.0);
  CHECK(thrown_code([&] { c.add(4, 1); }).has_value());
}

TEST_CASE("stratified split keeps class proportions") {
  const LabeledDataset d = blobs(5, 50, 2, 1.0, 5);
  const Split s = stratified_split(d, 0.7, 99);
  CHECK(s.train.size() == 5 * 35);
  CHECK(s.test.size() == 5 * 15);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);

  const Split again = stratified_split(d, 0.7, 99);
  CHECK(again.train == s.train);
  CHECK(stratified_split(d, 0.7, 100).train != s.train);

  const LabeledDataset tiny = blobs(2, 2, 1, 1.0, 6);
  const Split t = stratified_split(tiny, 0.99, 1);
  CHECK(t.train.size() == 2);
  CHECK(t.test.size() == 2);
}

TEST_CASE("a constant predictor scores its class share") {
  const LabeledDataset d = blobs(4, 10, 2, 1.0, 7);
  ConstantPipeline p(2);
  const EvalReport r = evaluate(d, p, 0.5, 5, 1, 1);
  CHECK(r.mean_accuracy == doctest::Approx(0.25));
  CHECK(r.n_trials == 5);
  // Row-normalized mean confusion puts all mass in column 2.
  for (std::size_t row = 0; row < 4; ++row) CHECK(r.mean_confusion[row * 4 + 1] == doctest::Approx(1.0));
}

TEST_CASE("evaluation is deterministic and thread independent") {
  const LabeledDataset d = blobs(3, 20, 4, 1.0, 8);
  KnnPipeline a(KnnConfig{}, 1);
  const EvalReport one = evaluate(d, a, 0.7, 20, 5, 1);
  KnnPipeline b(KnnConfig{}, 4);
  const EvalReport four = evaluate(d, b, 0.7, 20, 5, 4);
  CHECK(one == four);
  KnnPipeline c(KnnConfig{}, 1);
  CHECK(evaluate(d, c, 0.7, 20, 6, 1).trial_accuracy != one.trial_accuracy);
  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
  CHECK(trial_seed(5, 3) != trial_seed(5, 4));
}

TEST_CASE("evaluation errors") {
  LabeledDataset d = blobs(3, 5, 2, 1.0, 9);
  ConstantPipeline p(1);
  LabeledDataset single = d;
  single.samples.resize(5);
  CHECK(thrown_code([&] { evaluate(single, p, 0.7, 1, 1); }) == ErrorCode::kClassTooSmall);
  LabeledDataset lonely = d;
  lonely.samples.resize(11);
  CHECK(thrown_code([&] { evaluate(lonely, p, 0.7, 1, 1); }) == ErrorCode::kClassTooSmall);
  CHECK(thrown_code([&] { evaluate(d, p, 1.0, 1, 1); }) == ErrorCode::kBadConfig);
  CHECK(thrown_code([&] { evaluate(d, p, 0.7, 0, 1); }) == ErrorCode::kBadConfig);
}

TEST_CASE("pipelines classify separated blobs") {
  const LabeledDataset d = blobs(3, 20, 4, 6.0, 10);
  KnnPipeline knn(KnnConfig{}, 1);
  CHECK(evaluate(d, knn, 0.7, 5, 1, 1).mean_accuracy > 0.95);
  StandardizedKnnPipeline sk(KnnConfig{}, {0, 1, 2, 3});
  CHECK(evaluate(d, sk, 0.7, 5, 1, 1).mean_accuracy > 0.95);
  SvmPipeline svm(SvmConfig{});
  CHECK(evaluate(d, svm, 0.7, 5, 1, 1).mean_accuracy > 0.95);
}
