#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "submod/objectives.hpp"
#include "submod/plan_types.hpp"
#include "submod/rng.hpp"
#include "submod/setfun.hpp"

namespace submod {

// Four-connected square lattice. Cells are indexed x * side + y.
struct GridWorld {
  int side = 2;

  // Density-normalized sizing: about 12.5 cells per robot.
  static GridWorld for_robots(int n_robots) {
    const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(12.5 * n_robots))));
    return GridWorld{side};
  }

  int n_cells() const { return side * side; }
  int cell_x(int c) const { return c / side; }
  int cell_y(int c) const { return c % side; }
  int cell_of(int x, int y) const { return x * side + y; }
  bool in_grid(int x, int y) const { return x >= 0 && x < side && y >= 0 && y < side; }

  // Moves: 0 stay, 1 north, 2 south, 3 east, 4 west. Off-grid moves stay put.
  static constexpr int kMoves = 5;
  int move(int cell, int dir) const {
    static constexpr int dx[kMoves] = {0, 0, 0, 1, -1};
    static constexpr int dy[kMoves] = {0, 1, -1, 0, 0};
    const int x = cell_x(cell) + dx[dir];
    const int y = cell_y(cell) + dy[dir];
    return in_grid(x, y) ? cell_of(x, y) : cell;
  }

  double cell_distance(int a, int b) const {
    return std::hypot(static_cast<double>(cell_x(a) - cell_x(b)),
                      static_cast<double>(cell_y(a) - cell_y(b)));
  }
};

// Uniform 5-point random walk.
inline int target_step(int cell, const GridWorld& world, Rng& rng) {
  return world.move(cell, rng.uniform_int(0, GridWorld::kMoves - 1));
}

// Range sensor saturates at 20 units; noise grows with range.
constexpr double kRangeSaturation = 20.0;

inline double range_mean(double dist) { return std::min(dist, kRangeSaturation); }
inline double range_variance(double dist) {
  const double d = range_mean(dist);
  return 0.25 + 0.5 * d * d;
}

inline double range_measurement(int robot_cell, int target_cell, const GridWorld& world, Rng& rng) {
  const double d = world.cell_distance(robot_cell, target_cell);
  return range_mean(d) + rng.normal() * std::sqrt(range_variance(d));
}

// Histogram filter over grid cells. Sparse mode zeroes entries below the
// threshold after each measurement update and renormalizes.
struct TargetFilter {
  std::vector<double> probs;
  double sparse_threshold = 0.0;
  bool underflowed = false;

  static TargetFilter point_mass(const GridWorld& world, int cell, double threshold = 0.0) {
    TargetFilter f;
    f.probs.assign(world.n_cells(), 0.0);
    f.probs.at(cell) = 1.0;
    f.sparse_threshold = threshold;
    return f;
  }

  static TargetFilter uniform(const GridWorld& world, double threshold = 0.0) {
    TargetFilter f;
    f.probs.assign(world.n_cells(), 1.0 / world.n_cells());
    f.sparse_threshold = threshold;
    return f;
  }

  double mass() const {
    double m = 0.0;
    for (double p : probs) m += p;
    return m;
  }
};

namespace detail {

// One application of the random-walk kernel to an unnormalized histogram.
// Off-grid moves fold their mass back onto the source cell.
inline void walk_convolve(const GridWorld& world, const std::vector<double>& in,
                          std::vector<double>& out) {
  out.assign(in.size(), 0.0);
  for (int c = 0; c < static_cast<int>(in.size()); ++c) {
    const double p = in[c];
    if (p == 0.0) continue;
    const double share = p / GridWorld::kMoves;
    for (int dir = 0; dir < GridWorld::kMoves; ++dir) out[world.move(c, dir)] += share;
  }
}

// Unnormalized range likelihood for a measurement taken from robot_cell;
// the per-cell variance term cannot be dropped as a constant.
inline double range_likelihood(double z, double dist) {
  const double mu = range_mean(dist);
  const double var = range_variance(dist);
  return std::exp(-(z - mu) * (z - mu) / (2.0 * var)) / std::sqrt(var);
}

// Entropy in bits of an unnormalized non-negative histogram.
inline double entropy_bits_unnormalized(const std::vector<double>& h) {
  double sum = 0.0, acc = 0.0;
  for (double v : h) {
    if (v <= 0.0) continue;
    sum += v;
    acc += v * std::log(v);
  }
  if (sum <= 0.0) return 0.0;
  return (std::log(sum) - acc / sum) / std::numbers::ln2_v<double>;
}

}  // namespace detail

inline void filter_predict(TargetFilter& f, const GridWorld& world) {
  std::vector<double> out;
  detail::walk_convolve(world, f.probs, out);
  f.probs = std::move(out);
}

inline void filter_update(TargetFilter& f, const GridWorld& world, int robot_cell,
                          double measurement) {
  double sum = 0.0;
  std::vector<double> post(f.probs.size());
  for (int c = 0; c < static_cast<int>(f.probs.size()); ++c) {
    if (f.probs[c] == 0.0) continue;
    post[c] = f.probs[c] * detail::range_likelihood(measurement, world.cell_distance(robot_cell, c));
    sum += post[c];
  }
  if (sum <= 0.0 || !std::isfinite(sum)) {
    f.underflowed = true;  // keep the prior
    return;
  }
  for (double& p : post) p /= sum;
  if (f.sparse_threshold > 0.0) {
    double kept = 0.0;
    for (double& p : post) {
      if (p < f.sparse_threshold) p = 0.0;
      kept += p;
    }
    if (kept > 0.0)
      for (double& p : post) p /= kept;
  }
  f.probs = std::move(post);
}

inline double filter_entropy(const TargetFilter& f) {
  return detail::entropy_bits_unnormalized(f.probs);
}

inline Point2 filter_mean(const TargetFilter& f, const GridWorld& world) {
  Point2 mean;
  for (int c = 0; c < static_cast<int>(f.probs.size()); ++c) {
    mean.x += f.probs[c] * world.cell_x(c);
    mean.y += f.probs[c] * world.cell_y(c);
  }
  return mean;
}

struct TrackingOptions {
  int n_samples = 50;
  int horizon = 2;  // 1 or 2 planning steps
  // Range-limited planning: marginal gains ignore targets whose filter
  // mean is farther than this from the planning robot. Infinite = off.
  double target_mask_range = std::numeric_limits<double>::infinity();
  bool target_motion = true;  // toy oracles may freeze the targets
  std::uint64_t noise_seed = 0;
};

class TrackingEvaluator;

// Sampled mutual-information objective over a short horizon: for each
// target, the expected entropy reduction of its filter under the
// measurements the selected robot action sequences would produce,
// estimated by common-random-number Monte Carlo (shared target walks and
// standardized measurement noises across candidate selections). Ground
// elements are (robot, sequence) pairs; a sequence encodes horizon moves
// in base 5 (first move = action_id / 5, second = action_id % 5).
class TrackingObjective final : public SetObjective {
 public:
  TrackingObjective(const GridWorld& world, std::vector<TargetFilter> filters,
                    std::vector<int> robot_cells, TrackingOptions options,
                    std::vector<int> targets = {})
      : world_(world),
        filters_(std::move(filters)),
        robots_(std::move(robot_cells)),
        opt_(options) {
    if (opt_.n_samples < 1) throw std::invalid_argument("TrackingObjective: n_samples must be >= 1");
    if (opt_.horizon != 1 && opt_.horizon != 2)
      throw std::invalid_argument("TrackingObjective: horizon must be 1 or 2");
    if (targets.empty()) {
      targets_.resize(filters_.size());
      for (std::size_t k = 0; k < filters_.size(); ++k) targets_[k] = static_cast<int>(k);
    } else {
      targets_ = std::move(targets);
    }

    const int nt = static_cast<int>(targets_.size());
    pred1_.resize(nt);
    h1pre_.resize(nt);
    target_mean_.resize(nt);
    trajectory_.resize(static_cast<std::size_t>(opt_.n_samples) * nt * opt_.horizon);
    for (int ki = 0; ki < nt; ++ki) {
      const int k = targets_[ki];
      const auto& prior = filters_.at(k).probs;
      double mass = 0.0;
      for (double p : prior) mass += p;
      if (mass <= 0.0) throw std::invalid_argument("TrackingObjective: empty filter");

      if (opt_.target_motion) {
        detail::walk_convolve(world_, prior, pred1_[ki]);
      } else {
        pred1_[ki] = prior;
      }
      h1pre_[ki] = detail::entropy_bits_unnormalized(pred1_[ki]);
      target_mean_[ki] = filter_mean(filters_[k], world_);

      for (int s = 0; s < opt_.n_samples; ++s) {
        // Sample a target trajectory from the belief.
        const double u = hash_u01(opt_.noise_seed, s, k, 0, 0) * mass;
        double acc = 0.0;
        int cell = static_cast<int>(prior.size()) - 1;
        for (int c = 0; c < static_cast<int>(prior.size()); ++c) {
          acc += prior[c];
          if (u < acc) {
            cell = c;
            break;
          }
        }
        for (int i = 0; i < opt_.horizon; ++i) {
          if (opt_.target_motion) {
            const int dir =
                std::min(GridWorld::kMoves - 1,
                         static_cast<int>(hash_u01(opt_.noise_seed, s, k, i + 1, 0) * GridWorld::kMoves));
            cell = world_.move(cell, dir);
          }
          trajectory_[traj_index(s, ki, i)] = cell;
        }
      }
    }
  }

  const GridWorld& world() const { return world_; }
  int n_robots() const { return static_cast<int>(robots_.size()); }
  int n_targets() const { return static_cast<int>(targets_.size()); }
  const TrackingOptions& options() const { return opt_; }
  long evaluation_count() const { return eval_count_; }

  static constexpr int kSequences = GridWorld::kMoves * GridWorld::kMoves;

  // One component of the per-target sum decomposition; shares the joint
  // objective's noise stream so component values sum to the joint value.
  TrackingObjective single_target(int k) const {
    return TrackingObjective(world_, filters_, robots_, opt_, {k});
  }

  double value(const Selection& s) const override;
  std::unique_ptr<Evaluator> make_evaluator() const override;

 private:
  friend class TrackingEvaluator;

  std::size_t traj_index(int sample, int target_pos, int step) const {
    return (static_cast<std::size_t>(sample) * targets_.size() + target_pos) * opt_.horizon + step;
  }

  // Robot cell after the first `steps` moves of an action sequence. A
  // horizon-1 sequence is a single move index; horizon-2 sequences encode
  // two moves in base 5.
  int robot_pose(int robot, int seq, int steps) const {
    int cell = robots_.at(robot);
    if (opt_.horizon == 1) return steps >= 1 ? world_.move(cell, seq) : cell;
    if (steps >= 1) cell = world_.move(cell, seq / GridWorld::kMoves);
    if (steps >= 2) cell = world_.move(cell, seq % GridWorld::kMoves);
    return cell;
  }

  // Standardized measurement noise, shared across candidate selections.
  double measurement_noise(int sample, int target, int step, int robot) const {
    return hash_normal(opt_.noise_seed, 0x100000 + sample, target, step + 1, robot);
  }

  GridWorld world_;
  std::vector<TargetFilter> filters_;
  std::vector<int> robots_;
  TrackingOptions opt_;
  std::vector<int> targets_;  // absolute target indices

  std::vector<std::vector<double>> pred1_;  // predicted prior per target
  std::vector<double> h1pre_;
  std::vector<Point2> target_mean_;
  std::vector<int> trajectory_;  // [sample][target][step]

  mutable long eval_count_ = 0;
};

// Incremental state per (sample, target): the unnormalized step-1
// posterior under the base selection's measurements and the product of
// base step-2 likelihoods. Candidate gains rerun only the cheap forward
// pass with the candidate's likelihoods multiplied in.
class TrackingEvaluator final : public Evaluator {
 public:
  explicit TrackingEvaluator(const TrackingObjective& f) : f_(&f) {
    const int ns = f_->opt_.n_samples;
    const int nt = f_->n_targets();
    a1_.resize(static_cast<std::size_t>(ns) * nt);
    lam2_.resize(a1_.size());
    contribution_.assign(a1_.size(), 0.0);
    for (int s = 0; s < ns; ++s) {
      for (int ki = 0; ki < nt; ++ki) {
        const std::size_t p = pair_index(s, ki);
        a1_[p] = f_->pred1_[ki];
        if (f_->opt_.horizon == 2) lam2_[p].assign(f_->world_.n_cells(), 1.0);
        contribution_[p] = stage_contribution(p, ki);
        total_ += contribution_[p];
      }
    }
  }

  TrackingEvaluator(const TrackingEvaluator&) = default;

  void add(const GroundElement& x) override {
    const int ns = f_->opt_.n_samples;
    const int nt = f_->n_targets();
    const int p1 = f_->robot_pose(x.agent_id, x.action_id, 1);
    const int p2 = f_->robot_pose(x.agent_id, x.action_id, 2);
    const int start = f_->robots_[x.agent_id];
    for (int s = 0; s < ns; ++s) {
      for (int ki = 0; ki < nt; ++ki) {
        if (std::isfinite(f_->opt_.target_mask_range)) {
          const Point2 mean = f_->target_mean_[ki];
          const Point2 pos{static_cast<double>(f_->world_.cell_x(start)),
                           static_cast<double>(f_->world_.cell_y(start))};
          if (distance(pos, mean) > f_->opt_.target_mask_range) continue;
        }
        const std::size_t p = pair_index(s, ki);
        const int k = f_->targets_[ki];
        apply_measurement(a1_[p], p1, f_->trajectory_[f_->traj_index(s, ki, 0)],
                          f_->measurement_noise(s, k, 0, x.agent_id));
        if (f_->opt_.horizon == 2)
          apply_measurement(lam2_[p], p2, f_->trajectory_[f_->traj_index(s, ki, 1)],
                            f_->measurement_noise(s, k, 1, x.agent_id), /*is_likelihood=*/true);
        total_ -= contribution_[p];
        contribution_[p] = stage_contribution(p, ki);
        total_ += contribution_[p];
      }
    }
  }

  double gain(const GroundElement& x) const override {
    ++f_->eval_count_;
    const int ns = f_->opt_.n_samples;
    const int nt = f_->n_targets();
    const int p1 = f_->robot_pose(x.agent_id, x.action_id, 1);
    const int p2 = f_->robot_pose(x.agent_id, x.action_id, 2);
    const int start = f_->robots_[x.agent_id];

    double delta = 0.0;
    for (int ki = 0; ki < nt; ++ki) {
      if (std::isfinite(f_->opt_.target_mask_range)) {
        const Point2 mean = f_->target_mean_[ki];
        const Point2 pos{static_cast<double>(f_->world_.cell_x(start)),
                         static_cast<double>(f_->world_.cell_y(start))};
        if (distance(pos, mean) > f_->opt_.target_mask_range) continue;
      }
      const int k = f_->targets_[ki];
      for (int s = 0; s < ns; ++s) {
        const std::size_t p = pair_index(s, ki);
        scratch_a1_ = a1_[p];
        apply_measurement(scratch_a1_, p1, f_->trajectory_[f_->traj_index(s, ki, 0)],
                          f_->measurement_noise(s, k, 0, x.agent_id));
        double c = f_->h1pre_[ki] - detail::entropy_bits_unnormalized(scratch_a1_);
        if (f_->opt_.horizon == 2) {
          detail::walk_convolve(f_->world_, scratch_a1_, scratch_b2_);
          const double h2pre = detail::entropy_bits_unnormalized(scratch_b2_);
          const int true_cell = f_->trajectory_[f_->traj_index(s, ki, 1)];
          const double z = candidate_measurement(p2, true_cell,
                                                 f_->measurement_noise(s, k, 1, x.agent_id));
          scratch_a2_.resize(scratch_b2_.size());
          double sum = 0.0;
          for (int cell = 0; cell < static_cast<int>(scratch_b2_.size()); ++cell) {
            double v = scratch_b2_[cell] * lam2_[p][cell];
            if (v != 0.0)
              v *= detail::range_likelihood(z, f_->world_.cell_distance(p2, cell));
            scratch_a2_[cell] = v;
            sum += v;
          }
          double h2post;
          if (sum > 0.0 && std::isfinite(sum)) {
            h2post = detail::entropy_bits_unnormalized(scratch_a2_);
          } else {
            // Underflow: the update is skipped, matching apply_measurement.
            for (int cell = 0; cell < static_cast<int>(scratch_b2_.size()); ++cell)
              scratch_a2_[cell] = scratch_b2_[cell] * lam2_[p][cell];
            h2post = detail::entropy_bits_unnormalized(scratch_a2_);
          }
          c += h2pre - h2post;
        }
        delta += c - contribution_[p];
      }
    }
    return delta / ns;
  }

  // Grouped gains for one robot's whole block. The 25 two-step sequences
  // share their 5 step-1 branches, and step-2 likelihood vectors depend
  // only on the final pose, so both are computed once and reused.
  void block_gains(int agent, int n_actions, std::vector<double>& out) const override {
    if (f_->opt_.horizon != 2 || n_actions != TrackingObjective::kSequences) {
      Evaluator::block_gains(agent, n_actions, out);
      return;
    }
    f_->eval_count_ += n_actions;
    const int ns = f_->opt_.n_samples;
    const int nt = f_->n_targets();
    const int n_cells = f_->world_.n_cells();
    const int start = f_->robots_[agent];

    int p1[GridWorld::kMoves];
    for (int m = 0; m < GridWorld::kMoves; ++m) p1[m] = f_->world_.move(start, m);
    // Distinct final poses and the sequence -> pose index map.
    std::vector<int> pos2;
    int idx2[TrackingObjective::kSequences];
    for (int m1 = 0; m1 < GridWorld::kMoves; ++m1)
      for (int m2 = 0; m2 < GridWorld::kMoves; ++m2) {
        const int q = f_->world_.move(p1[m1], m2);
        int j = 0;
        while (j < static_cast<int>(pos2.size()) && pos2[j] != q) ++j;
        if (j == static_cast<int>(pos2.size())) pos2.push_back(q);
        idx2[m1 * GridWorld::kMoves + m2] = j;
      }

    out.assign(n_actions, 0.0);
    scratch_lik2_.resize(pos2.size());
    for (auto& v : scratch_lik2_) v.resize(n_cells);

    for (int ki = 0; ki < nt; ++ki) {
      if (std::isfinite(f_->opt_.target_mask_range)) {
        const Point2 mean = f_->target_mean_[ki];
        const Point2 pos{static_cast<double>(f_->world_.cell_x(start)),
                         static_cast<double>(f_->world_.cell_y(start))};
        if (distance(pos, mean) > f_->opt_.target_mask_range) continue;
      }
      const int k = f_->targets_[ki];
      for (int s = 0; s < ns; ++s) {
        const std::size_t p = pair_index(s, ki);
        const std::vector<double>& a1 = a1_[p];
        const std::vector<double>& lam2 = lam2_[p];
        const int true1 = f_->trajectory_[f_->traj_index(s, ki, 0)];
        const int true2 = f_->trajectory_[f_->traj_index(s, ki, 1)];
        const double nu1 = f_->measurement_noise(s, k, 0, agent);
        const double nu2 = f_->measurement_noise(s, k, 1, agent);
        // Every branch's step-2 prior lives inside the one-step walk
        // neighborhood of the current posterior's support; likelihoods are
        // only needed there.
        scratch_mark_.assign(n_cells, 0);
        scratch_support_.clear();
        for (int cell = 0; cell < n_cells; ++cell) {
          if (a1[cell] == 0.0) continue;
          for (int dir = 0; dir < GridWorld::kMoves; ++dir) {
            const int c2 = f_->world_.move(cell, dir);
            if (!scratch_mark_[c2]) {
              scratch_mark_[c2] = 1;
              scratch_support_.push_back(c2);
            }
          }
        }
        std::sort(scratch_support_.begin(), scratch_support_.end());
        for (std::size_t j = 0; j < pos2.size(); ++j) {
          const double z2 = candidate_measurement(pos2[j], true2, nu2);
          for (int cell : scratch_support_)
            scratch_lik2_[j][cell] =
                detail::range_likelihood(z2, f_->world_.cell_distance(pos2[j], cell));
        }
        for (int m1 = 0; m1 < GridWorld::kMoves; ++m1) {
          scratch_a1_ = a1;
          apply_measurement(scratch_a1_, p1[m1], true1, nu1);
          const double branch1 = f_->h1pre_[ki] - detail::entropy_bits_unnormalized(scratch_a1_);
          detail::walk_convolve(f_->world_, scratch_a1_, scratch_b2_);
          const double h2pre = detail::entropy_bits_unnormalized(scratch_b2_);
          for (int m2 = 0; m2 < GridWorld::kMoves; ++m2) {
            const std::vector<double>& lik2 = scratch_lik2_[idx2[m1 * GridWorld::kMoves + m2]];
            double sum = 0.0, acc = 0.0;
            for (int cell : scratch_support_) {
              double v = scratch_b2_[cell] * lam2[cell];
              if (v != 0.0) {
                v *= lik2[cell];
                if (v > 0.0) {
                  sum += v;
                  acc += v * std::log(v);
                }
              }
            }
            double h2post;
            if (sum > 0.0 && std::isfinite(sum)) {
              h2post = (std::log(sum) - acc / sum) / std::numbers::ln2_v<double>;
            } else {
              // Underflow: the update is skipped, matching apply_measurement.
              scratch_a2_.resize(scratch_b2_.size());
              for (int cell = 0; cell < n_cells; ++cell)
                scratch_a2_[cell] = scratch_b2_[cell] * lam2[cell];
              h2post = detail::entropy_bits_unnormalized(scratch_a2_);
            }
            out[m1 * GridWorld::kMoves + m2] +=
                branch1 + (h2pre - h2post) - contribution_[p];
          }
        }
      }
    }
    for (double& g : out) g /= ns;
  }

  double value() const override {
    ++f_->eval_count_;
    return std::max(0.0, total_ / f_->opt_.n_samples);
  }

  std::unique_ptr<Evaluator> clone() const override {
    return std::make_unique<TrackingEvaluator>(*this);
  }

 private:
  std::size_t pair_index(int sample, int target_pos) const {
    return static_cast<std::size_t>(sample) * f_->n_targets() + target_pos;
  }

  double candidate_measurement(int robot_cell, int true_cell, double noise) const {
    const double d = f_->world_.cell_distance(robot_cell, true_cell);
    return range_mean(d) + noise * std::sqrt(range_variance(d));
  }

  // Multiply a histogram (or likelihood product) by the range likelihood
  // of the measurement the robot at robot_cell would take of true_cell.
  // Skips the update entirely when everything underflows.
  void apply_measurement(std::vector<double>& h, int robot_cell, int true_cell,
                         double noise, bool is_likelihood = false) const {
    const double z = candidate_measurement(robot_cell, true_cell, noise);
    scratch_lik_.resize(h.size());
    double sum = 0.0;
    for (int cell = 0; cell < static_cast<int>(h.size()); ++cell) {
      double v = h[cell];
      if (v != 0.0 || is_likelihood)
        v *= detail::range_likelihood(z, f_->world_.cell_distance(robot_cell, cell));
      scratch_lik_[cell] = v;
      sum += v;
    }
    if (sum > 0.0 && std::isfinite(sum)) h.swap(scratch_lik_);
  }

  // Entropies of the forward pass for the current base state of one
  // (sample, target) pair.
  double stage_contribution(std::size_t p, int ki) const {
    double c = f_->h1pre_[ki] - detail::entropy_bits_unnormalized(a1_[p]);
    if (f_->opt_.horizon == 2) {
      detail::walk_convolve(f_->world_, a1_[p], scratch_b2_);
      const double h2pre = detail::entropy_bits_unnormalized(scratch_b2_);
      scratch_a2_.resize(scratch_b2_.size());
      for (int cell = 0; cell < static_cast<int>(scratch_b2_.size()); ++cell)
        scratch_a2_[cell] = scratch_b2_[cell] * lam2_[p][cell];
      c += h2pre - detail::entropy_bits_unnormalized(scratch_a2_);
    }
    return c;
  }

  const TrackingObjective* f_;
  std::vector<std::vector<double>> a1_;    // per pair: unnormalized step-1 posterior
  std::vector<std::vector<double>> lam2_;  // per pair: base step-2 likelihood product
  std::vector<double> contribution_;
  double total_ = 0.0;
  mutable std::vector<double> scratch_a1_, scratch_b2_, scratch_a2_, scratch_lik_;
  mutable std::vector<std::vector<double>> scratch_lik2_;
  mutable std::vector<int> scratch_support_;
  mutable std::vector<char> scratch_mark_;
};

inline double TrackingObjective::value(const Selection& s) const {
  TrackingEvaluator ev(*this);
  for (const auto& x : s) ev.add(x);
  return ev.value();
}

inline std::unique_ptr<Evaluator> TrackingObjective::make_evaluator() const {
  return std::make_unique<TrackingEvaluator>(*this);
}

inline double tracking_objective(const Selection& selection,
                                 const std::vector<TargetFilter>& filters, const GridWorld& world,
                                 const std::vector<int>& robot_cells, int n_samples,
                                 std::uint64_t noise_seed) {
  TrackingOptions opt;
  opt.n_samples = n_samples;
  opt.noise_seed = noise_seed;
  return TrackingObjective(world, filters, robot_cells, opt).value(selection);
}

// Exhaustive single-robot argmax over the 25 two-step sequences given the
// prior selections, using a common noise stream across candidates. Ties
// broken by action index.
inline int plan_single_robot(int robot, const TrackingObjective& f,
                             const Selection& prior_selections) {
  auto ev = evaluator_for(f, prior_selections);
  int best = 0;
  double best_gain = -std::numeric_limits<double>::infinity();
  const int n_seq =
      f.options().horizon == 1 ? GridWorld::kMoves : GridWorld::kMoves * GridWorld::kMoves;
  for (int seq = 0; seq < n_seq; ++seq) {
    const double g = ev->gain({robot, seq});
    if (g > best_gain) {
      best = seq;
      best_gain = g;
    }
  }
  return best;
}

}  // namespace submod
