#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "submod/setfun.hpp"

namespace submod {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Sensor success model: probability of identifying an event at the given
// distance. Note the r_s^4 in the denominator: the effective detection
// scale is about r_s^2, implemented as published.
inline double detection_success_prob(double dist, double r_s) {
  if (dist < 0.0 || r_s <= 0.0)
    throw std::invalid_argument("detection_success_prob: bad arguments");
  return std::exp(-(dist * dist) / (r_s * r_s * r_s * r_s));
}

struct Event {
  Point2 position;
  double value = 0.0;
};

// Probabilistic weighted coverage: f(X) = sum_e (1 - prod_{x in X} p^e_x) v_e
// where p^e_x is the independent failure probability of action x for event e.
// Monotone, submodular, and 3-increasing.
class ProbCoverageProblem final : public SetObjective {
 public:
  using FailureFn = std::function<double(const GroundElement&, int event_index)>;

  ProbCoverageProblem(std::vector<Event> events, std::vector<int> block_sizes,
                      const FailureFn& failure_prob,
                      std::vector<Point2> action_centers = {})
      : events_(std::move(events)),
        blocks_(std::move(block_sizes)),
        action_centers_(std::move(action_centers)) {
    int idx = 0;
    for (int agent = 0; agent < static_cast<int>(blocks_.size()); ++agent) {
      for (int action = 0; action < blocks_[agent]; ++action) {
        element_index_.push_back(idx);
        GroundElement x{agent, action, idx};
        for (int e = 0; e < static_cast<int>(events_.size()); ++e) {
          const double p = failure_prob(x, e);
          if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("ProbCoverageProblem: failure probability outside [0,1]");
          failure_.push_back(p);
        }
        ++idx;
      }
    }
    offsets_.resize(blocks_.size() + 1, 0);
    for (std::size_t i = 0; i < blocks_.size(); ++i) offsets_[i + 1] = offsets_[i] + blocks_[i];
  }

  int n_events() const { return static_cast<int>(events_.size()); }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<int>& block_sizes() const { return blocks_; }
  const std::vector<Point2>& action_centers() const { return action_centers_; }

  double failure_prob(const GroundElement& x, int event) const {
    return failure_[static_cast<std::size_t>(flat_index(x)) * events_.size() + event];
  }

  double value(const Selection& s) const override {
    std::vector<double> surv(events_.size(), 1.0);
    for (const auto& x : s) {
      const double* row = failure_row(x);
      for (std::size_t e = 0; e < events_.size(); ++e) surv[e] *= row[e];
    }
    double total = 0.0;
    for (std::size_t e = 0; e < events_.size(); ++e) total += (1.0 - surv[e]) * events_[e].value;
    return total;
  }

  std::unique_ptr<Evaluator> make_evaluator() const override;

  const double* failure_row(const GroundElement& x) const {
    return failure_.data() + static_cast<std::size_t>(flat_index(x)) * events_.size();
  }

 private:
  int flat_index(const GroundElement& x) const {
    if (x.agent_id < 0 || x.agent_id >= static_cast<int>(blocks_.size()) || x.action_id < 0 ||
        x.action_id >= blocks_[x.agent_id])
      throw std::invalid_argument("ProbCoverageProblem: element out of range");
    return offsets_[x.agent_id] + x.action_id;
  }

  std::vector<Event> events_;
  std::vector<int> blocks_;
  std::vector<Point2> action_centers_;
  std::vector<int> element_index_;
  std::vector<int> offsets_;
  std::vector<double> failure_;  // [element][event]
};

// Tracks the per-event surviving failure product for the base selection;
// marginal gains are O(events).
class ProbCoverageEvaluator final : public Evaluator {
 public:
  explicit ProbCoverageEvaluator(const ProbCoverageProblem& p)
      : p_(&p), surv_(p.n_events(), 1.0) {}

  void add(const GroundElement& x) override {
    const double* row = p_->failure_row(x);
    for (std::size_t e = 0; e < surv_.size(); ++e) surv_[e] *= row[e];
  }

  double gain(const GroundElement& x) const override {
    const double* row = p_->failure_row(x);
    double g = 0.0;
    for (std::size_t e = 0; e < surv_.size(); ++e)
      g += p_->events()[e].value * surv_[e] * (1.0 - row[e]);
    return g;
  }

  double value() const override {
    double total = 0.0;
    for (std::size_t e = 0; e < surv_.size(); ++e)
      total += (1.0 - surv_[e]) * p_->events()[e].value;
    return total;
  }

  std::unique_ptr<Evaluator> clone() const override {
    return std::make_unique<ProbCoverageEvaluator>(*this);
  }

 private:
  const ProbCoverageProblem* p_;
  std::vector<double> surv_;
};

inline std::unique_ptr<Evaluator> ProbCoverageProblem::make_evaluator() const {
  return std::make_unique<ProbCoverageEvaluator>(*this);
}

// Fraction of grid-cell centers within r_s of any selected action center.
// A deterministic approximation of union-of-disks area over the unit
// square; error is about 2/grid_resolution along disk boundaries.
class AreaCoverageProblem final : public SetObjective {
 public:
  AreaCoverageProblem(std::vector<std::vector<Point2>> action_centers, double r_s,
                      int grid_resolution = 512)
      : centers_(std::move(action_centers)), r_s_(r_s), grid_(grid_resolution) {
    if (r_s_ <= 0.0) throw std::invalid_argument("AreaCoverageProblem: r_s must be positive");
    const double cell = 1.0 / grid_;
    const double r2 = r_s_ * r_s_;
    offsets_.push_back(0);
    for (const auto& block : centers_) {
      for (const auto& c : block) {
        // Cells whose centers fall inside the disk about c.
        const int x_lo = std::max(0, static_cast<int>(std::floor((c.x - r_s_) * grid_ - 0.5)));
        const int x_hi = std::min(grid_ - 1, static_cast<int>(std::ceil((c.x + r_s_) * grid_ - 0.5)));
        for (int gx = x_lo; gx <= x_hi; ++gx) {
          const double px = (gx + 0.5) * cell;
          const double dx2 = (px - c.x) * (px - c.x);
          if (dx2 > r2) continue;
          const double dy = std::sqrt(r2 - dx2);
          const int y_lo = std::max(0, static_cast<int>(std::floor((c.y - dy) * grid_ - 0.5)));
          const int y_hi = std::min(grid_ - 1, static_cast<int>(std::ceil((c.y + dy) * grid_ - 0.5)));
          for (int gy = y_lo; gy <= y_hi; ++gy) {
            const double py = (gy + 0.5) * cell;
            if (dx2 + (py - c.y) * (py - c.y) <= r2) cells_.push_back(gx * grid_ + gy);
          }
        }
        offsets_.push_back(static_cast<int>(cells_.size()));
      }
    }
  }

  int n_agents() const { return static_cast<int>(centers_.size()); }
  int grid_resolution() const { return grid_; }
  double sensor_radius() const { return r_s_; }
  const std::vector<std::vector<Point2>>& action_centers() const { return centers_; }

  // Cell indices covered by one action.
  std::pair<const int*, const int*> cell_span(const GroundElement& x) const {
    const int i = flat_index(x);
    return {cells_.data() + offsets_[i], cells_.data() + offsets_[i + 1]};
  }

  double value(const Selection& s) const override;
  std::unique_ptr<Evaluator> make_evaluator() const override;

  int n_cells() const { return grid_ * grid_; }

 private:
  int flat_index(const GroundElement& x) const {
    if (x.agent_id < 0 || x.agent_id >= n_agents() || x.action_id < 0 ||
        x.action_id >= static_cast<int>(centers_[x.agent_id].size()))
      throw std::invalid_argument("AreaCoverageProblem: element out of range");
    int idx = 0;
    for (int a = 0; a < x.agent_id; ++a) idx += static_cast<int>(centers_[a].size());
    return idx + x.action_id;
  }

  std::vector<std::vector<Point2>> centers_;
  double r_s_;
  int grid_;
  std::vector<int> cells_;    // concatenated per-element covered cells
  std::vector<int> offsets_;  // per flat element index
};

class AreaCoverageEvaluator final : public Evaluator {
 public:
  explicit AreaCoverageEvaluator(const AreaCoverageProblem& p)
      : p_(&p), covered_(p.n_cells(), 0), n_covered_(0) {}

  void add(const GroundElement& x) override {
    auto [it, end] = p_->cell_span(x);
    for (; it != end; ++it) {
      if (!covered_[*it]) {
        covered_[*it] = 1;
        ++n_covered_;
      }
    }
  }

  double gain(const GroundElement& x) const override {
    auto [it, end] = p_->cell_span(x);
    int fresh = 0;
    for (; it != end; ++it) fresh += !covered_[*it];
    return static_cast<double>(fresh) / p_->n_cells();
  }

  double value() const override { return static_cast<double>(n_covered_) / p_->n_cells(); }

  std::unique_ptr<Evaluator> clone() const override {
    return std::make_unique<AreaCoverageEvaluator>(*this);
  }

 private:
  const AreaCoverageProblem* p_;
  std::vector<std::uint8_t> covered_;
  int n_covered_;
};

inline double AreaCoverageProblem::value(const Selection& s) const {
  AreaCoverageEvaluator ev(*this);
  for (const auto& x : s) ev.add(x);
  return ev.value();
}

inline std::unique_ptr<Evaluator> AreaCoverageProblem::make_evaluator() const {
  return std::make_unique<AreaCoverageEvaluator>(*this);
}

}  // namespace submod
