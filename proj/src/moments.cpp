#include "gci/moments.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gci {

Moments::Moments(std::size_t k, std::vector<std::vector<std::size_t>> groups)
    : mean_(k, 0.0), group_of_(k, -1), slot_of_(k, -1), delta_(k, 0.0) {
  if (groups.empty()) {
    groups.emplace_back(k);
    std::iota(groups.front().begin(), groups.front().end(), std::size_t{0});
  }
  for (auto& idx : groups) {
    Group g;
    g.comoment.assign(idx.size() * idx.size(), 0.0);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (idx[s] >= k || group_of_[idx[s]] != -1) throw std::invalid_argument("moment groups must partition valid indices");
      group_of_[idx[s]] = static_cast<int>(groups_.size());
      slot_of_[idx[s]] = static_cast<int>(s);
    }
    g.index = std::move(idx);
    groups_.push_back(std::move(g));
  }
}

void Moments::add(std::span<const double> x) {
  ++count_;
  const double inv_n = 1.0 / static_cast<double>(count_);
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    delta_[i] = x[i] - mean_[i];
    mean_[i] += delta_[i] * inv_n;
  }
  for (auto& g : groups_) {
    const std::size_t m = g.index.size();
    for (std::size_t r = 0; r < m; ++r) {
      const double dr = delta_[g.index[r]];
      for (std::size_t c = 0; c < m; ++c) g.comoment[r * m + c] += dr * (x[g.index[c]] - mean_[g.index[c]]);
    }
  }
}

void Moments::merge(const Moments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  for (std::size_t i = 0; i < mean_.size(); ++i) delta_[i] = other.mean_[i] - mean_[i];
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    auto& g = groups_[gi];
    const auto& h = other.groups_[gi];
    const std::size_t m = g.index.size();
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        g.comoment[r * m + c] += h.comoment[r * m + c] + delta_[g.index[r]] * delta_[g.index[c]] * na * nb / n;
  }
  for (std::size_t i = 0; i < mean_.size(); ++i) mean_[i] += delta_[i] * nb / n;
  count_ += other.count_;
}

double Moments::covariance(std::size_t i, std::size_t j) const {
  if (group_of_[i] != group_of_[j]) throw std::invalid_argument("covariance requested across moment groups");
  if (count_ < 2) return 0.0;
  const auto& g = groups_[static_cast<std::size_t>(group_of_[i])];
  const std::size_t m = g.index.size();
  return g.comoment[static_cast<std::size_t>(slot_of_[i]) * m + static_cast<std::size_t>(slot_of_[j])] /
         static_cast<double>(count_ - 1);
}

double Moments::std_error(std::size_t i) const {
  if (count_ == 0) return 0.0;
  return std::sqrt(std::max(0.0, variance(i)) / static_cast<double>(count_));
}

namespace {

GapEstimate delta_method(const Moments& m, const std::size_t (&idx)[3], const double (&grad)[3], double value) {
  double var = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) var += grad[p] * grad[q] * m.covariance(idx[p], idx[q]);
  const double n = static_cast<double>(std::max<std::size_t>(m.count(), 1));
  return {value, std::sqrt(std::max(0.0, var) / n)};
}

}  // namespace

GapEstimate covariance_gap(const Moments& m, std::size_t joint, std::size_t a, std::size_t b) {
  const double ma = m.mean(a);
  const double mb = m.mean(b);
  return delta_method(m, {joint, a, b}, {1.0, -mb, -ma}, m.mean(joint) - ma * mb);
}

GapEstimate ratio_gap(const Moments& m, std::size_t joint, std::size_t a, std::size_t b) {
  const double ma = m.mean(a);
  if (!(ma > 0.0)) return {0.0, 0.0};
  const double mj = m.mean(joint);
  return delta_method(m, {joint, a, b}, {1.0 / ma, -mj / (ma * ma), -1.0}, mj / ma - m.mean(b));
}

}  // namespace gci
