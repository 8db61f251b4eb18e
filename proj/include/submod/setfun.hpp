#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace submod {

// One (agent, action) pair: an element of the ground set.
struct GroundElement {
  int agent_id = -1;
  int action_id = -1;
  int payload_ref = -1;  // opaque handle into scenario data

  friend bool operator==(const GroundElement& a, const GroundElement& b) {
    return a.agent_id == b.agent_id && a.action_id == b.action_id;
  }
  friend bool operator<(const GroundElement& a, const GroundElement& b) {
    if (a.agent_id != b.agent_id) return a.agent_id < b.agent_id;
    return a.action_id < b.action_id;
  }
};

// An ordered set of ground elements; iteration order is decision order.
class Selection {
 public:
  Selection() = default;
  explicit Selection(std::vector<GroundElement> elements) : elements_(std::move(elements)) {}

  void add(const GroundElement& x) {
    if (contains(x)) throw std::invalid_argument("Selection::add: element already present");
    elements_.push_back(x);
  }

  bool contains(const GroundElement& x) const {
    return std::find(elements_.begin(), elements_.end(), x) != elements_.end();
  }

  bool contains_agent(int agent_id) const {
    for (const auto& e : elements_)
      if (e.agent_id == agent_id) return true;
    return false;
  }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const GroundElement& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  const std::vector<GroundElement>& elements() const { return elements_; }

  Selection with(const GroundElement& x) const {
    Selection s = *this;
    s.add(x);
    return s;
  }

 private:
  std::vector<GroundElement> elements_;
};

// Agent -> action-block structure; feasible sets pick at most one action
// per agent.
class SimplePartitionMatroid {
 public:
  explicit SimplePartitionMatroid(std::vector<int> block_sizes) : blocks_(std::move(block_sizes)) {
    for (int b : blocks_)
      if (b <= 0) throw std::invalid_argument("SimplePartitionMatroid: empty block");
  }

  int n_agents() const { return static_cast<int>(blocks_.size()); }
  int block_size(int agent) const { return blocks_.at(agent); }
  const std::vector<int>& block_sizes() const { return blocks_; }

  void check_element(const GroundElement& x) const {
    if (x.agent_id < 0 || x.agent_id >= n_agents() || x.action_id < 0 ||
        x.action_id >= blocks_[x.agent_id])
      throw std::invalid_argument("GroundElement out of range for matroid");
  }

  // Product of block sizes, saturating at `cap + 1`.
  std::uint64_t basis_count(std::uint64_t cap) const {
    std::uint64_t n = 1;
    for (int b : blocks_) {
      n *= static_cast<std::uint64_t>(b);
      if (n > cap) return cap + 1;
    }
    return n;
  }

 private:
  std::vector<int> blocks_;
};

// Incremental evaluation context for a set objective. Mutation is
// single-owner; `gain` is a const query against the current base.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual void add(const GroundElement& x) = 0;
  virtual double gain(const GroundElement& x) const = 0;
  virtual double value() const = 0;
  virtual std::unique_ptr<Evaluator> clone() const = 0;

  // Marginal gains for every action in one agent's block; objectives with
  // shared work across candidates override this.
  virtual void block_gains(int agent, int n_actions, std::vector<double>& out) const {
    out.resize(n_actions);
    for (int a = 0; a < n_actions; ++a) out[a] = gain({agent, a});
  }
};

// Evaluation oracle for a normalized monotone submodular function.
// Evaluation must be safe for concurrent read-only calls.
class SetObjective {
 public:
  virtual ~SetObjective() = default;
  virtual double value(const Selection& s) const = 0;
  virtual bool is_stochastic() const { return false; }
  virtual std::unique_ptr<Evaluator> make_evaluator() const;
};

// Fallback evaluator that re-evaluates from scratch.
class GenericEvaluator final : public Evaluator {
 public:
  explicit GenericEvaluator(const SetObjective& f) : f_(&f), base_value_(0.0) {}

  void add(const GroundElement& x) override {
    base_.add(x);
    base_value_ = f_->value(base_);
  }
  double gain(const GroundElement& x) const override {
    return f_->value(base_.with(x)) - base_value_;
  }
  double value() const override { return base_value_; }
  std::unique_ptr<Evaluator> clone() const override {
    return std::make_unique<GenericEvaluator>(*this);
  }

 private:
  const SetObjective* f_;
  Selection base_;
  double base_value_;
};

inline std::unique_ptr<Evaluator> SetObjective::make_evaluator() const {
  return std::make_unique<GenericEvaluator>(*this);
}

inline std::unique_ptr<Evaluator> evaluator_for(const SetObjective& f, const Selection& base) {
  auto ev = f.make_evaluator();
  for (const auto& e : base) ev->add(e);
  return ev;
}

// f(base + x) - f(base); the discrete derivative of f at base in
// direction x.
inline double marginal_gain(const SetObjective& f, const GroundElement& x, const Selection& base) {
  if (base.contains(x)) throw std::invalid_argument("marginal_gain: element already in base");
  return f.value(base.with(x)) - f.value(base);
}

// f({a,b} + base) - f({a} + base) - f({b} + base) + f(base); the second
// discrete derivative f(a; b | base). Non-positive for submodular f.
inline double second_derivative(const SetObjective& f, const GroundElement& a,
                                const GroundElement& b, const Selection& base) {
  if (a == b) throw std::invalid_argument("second_derivative: arguments coincide");
  if (base.contains(a) || base.contains(b))
    throw std::invalid_argument("second_derivative: argument already in base");
  return f.value(base.with(a).with(b)) - f.value(base.with(a)) - f.value(base.with(b)) +
         f.value(base);
}

inline bool matroid_feasible(const SimplePartitionMatroid& m, const Selection& s) {
  std::vector<int> picks(m.n_agents(), 0);
  for (const auto& e : s) {
    m.check_element(e);
    if (++picks[e.agent_id] > 1) return false;
  }
  return true;
}

// Exhaustive enumeration over all bases; the test oracle for every solver.
// Ties broken by lexicographic (agent_id, action_id) over the whole basis.
inline std::pair<Selection, double> brute_force_optimum(const SetObjective& f,
                                                        const SimplePartitionMatroid& m,
                                                        std::uint64_t cap = 1000000) {
  if (m.basis_count(cap) > cap) throw std::length_error("brute_force_optimum: enumeration cap exceeded");

  const int n = m.n_agents();
  std::vector<int> actions(n, 0);
  Selection best;
  double best_value = 0.0;
  bool first = true;
  while (true) {
    Selection s;
    for (int i = 0; i < n; ++i) s.add({i, actions[i]});
    const double v = f.value(s);
    if (first || v > best_value) {
      best = s;
      best_value = v;
      first = false;
    }
    int i = n - 1;
    while (i >= 0 && actions[i] + 1 >= m.block_size(i)) {
      actions[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++actions[i];
  }
  return {best, best_value};
}

}  // namespace submod
