#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gci {

/// Streaming means and co-moments of a vector observable.
///
/// Co-moments are tracked inside declared index groups only; without groups
/// all k components form one group. Two accumulators over disjoint samples
/// merge exactly (pairwise update), so a fixed merge order gives bitwise
/// reproducible results.
class Moments {
 public:
  explicit Moments(std::size_t k, std::vector<std::vector<std::size_t>> groups = {});

  void add(std::span<const double> x);
  void merge(const Moments& other);

  std::size_t count() const { return count_; }
  std::size_t size() const { return mean_.size(); }
  double mean(std::size_t i) const { return mean_[i]; }
  /// Sample covariance (n - 1 denominator); i and j must share a group.
  double covariance(std::size_t i, std::size_t j) const;
  double variance(std::size_t i) const { return covariance(i, i); }
  /// Standard error of mean(i).
  double std_error(std::size_t i) const;

 private:
  struct Group {
    std::vector<std::size_t> index;
    std::vector<double> comoment;  // row-major |index| x |index|
  };

  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<Group> groups_;
  std::vector<int> group_of_;
  std::vector<int> slot_of_;
  std::vector<double> delta_;
};

struct GapEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// mean(joint) - mean(a) * mean(b) with its delta-method standard error.
GapEstimate covariance_gap(const Moments& m, std::size_t joint, std::size_t a, std::size_t b);

/// mean(joint) / mean(a) - mean(b): the reweighted form of the same gap.
GapEstimate ratio_gap(const Moments& m, std::size_t joint, std::size_t a, std::size_t b);

}  // namespace gci
