#include "idt/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "idt/error.hpp"
#include "idt/random.hpp"

namespace idt {

std::vector<std::size_t> DecisionTree::leaves() const {
  std::vector<std::size_t> out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (nodes[i].is_leaf()) {
      out.push_back(i);
    } else {
      stack.push_back(static_cast<std::size_t>(nodes[i].right));
      stack.push_back(static_cast<std::size_t>(nodes[i].left));
    }
  }
  return out;
}

std::size_t DecisionTree::leaf_count() const { return leaves().size(); }

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::size_t)> rec = [&](std::size_t i) -> std::size_t {
    if (nodes[i].is_leaf()) return 0;
    return 1 + std::max(rec(static_cast<std::size_t>(nodes[i].left)), rec(static_cast<std::size_t>(nodes[i].right)));
  };
  return nodes.empty() ? 0 : rec(0);
}

namespace {

struct Stats {
  std::vector<double> mean;
  double sse = 0.0;
  double magnitude = 0.0;  // sum of squared target norms
};

Stats node_stats(const TargetMatrix& y, std::span<const std::uint32_t> rows) {
  Stats s;
  s.mean.assign(y.dim, 0.0);
  for (auto r : rows) {
    auto t = y.row(r);
    for (std::size_t d = 0; d < y.dim; ++d) s.mean[d] += t[d];
  }
  for (auto& m : s.mean) m /= static_cast<double>(rows.size());
  for (auto r : rows) {
    auto t = y.row(r);
    for (std::size_t d = 0; d < y.dim; ++d) {
      const double e = t[d] - s.mean[d];
      s.sse += e * e;
      s.magnitude += t[d] * t[d];
    }
  }
  return s;
}

struct Candidate {
  double sse = std::numeric_limits<double>::infinity();
  std::size_t column = 0;
  Rational threshold;
  bool found = false;
};

class Builder {
 public:
  Builder(const FeatureTable& table, const FitOptions& options) : table_(table), options_(options), y_(table.targets()) {
    if (options.feature_mask) {
      columns_ = *options.feature_mask;
      std::sort(columns_.begin(), columns_.end());
      columns_.erase(std::unique(columns_.begin(), columns_.end()), columns_.end());
      for (auto c : columns_) {
        if (c >= table.cols()) throw InvariantError("feature mask column out of range");
      }
    } else {
      columns_.resize(table.cols());
      std::iota(columns_.begin(), columns_.end(), 0);
    }
  }

  DecisionTree run() {
    std::vector<std::uint32_t> rows(table_.rows());
    std::iota(rows.begin(), rows.end(), 0U);
    if (rows.empty()) throw DataError("cannot fit a tree on an empty table");
    grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  std::size_t grow(std::vector<std::uint32_t> rows, std::size_t depth) {
    const std::size_t index = tree_.nodes.size();
    tree_.nodes.emplace_back();
    Stats st = node_stats(y_, rows);
    {
      auto& node = tree_.nodes[index];
      node.value = st.mean;
      node.samples = rows.size();
      node.sse = st.sse;
    }
    const double eps = 1e-12 * (1.0 + st.magnitude);
    const bool depth_ok = !options_.max_depth || depth < *options_.max_depth;
    const std::size_t min_leaf = std::max<std::size_t>(1, options_.min_rows_leaf);
    Candidate best;
    if (depth_ok && st.sse > eps && rows.size() >= 2 * min_leaf) best = search(rows, st, min_leaf, eps);
    if (!best.found || best.sse >= st.sse - eps) {
      tree_.nodes[index].rows = std::move(rows);
      return index;
    }
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    for (auto r : rows) (table_.exceeds(r, best.column, best.threshold) ? right : left).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    tree_.nodes[index].split = SplitTest{table_.column(best.column), best.threshold};
    const auto l = grow(std::move(left), depth + 1);
    tree_.nodes[index].left = static_cast<std::int32_t>(l);
    const auto r = grow(std::move(right), depth + 1);
    tree_.nodes[index].right = static_cast<std::int32_t>(r);
    return index;
  }

  Candidate search(const std::vector<std::uint32_t>& rows, const Stats& st, std::size_t min_leaf, double eps) {
    const std::size_t m = rows.size();
    const std::size_t dim = y_.dim;
    std::vector<double> total(dim, 0.0);
    double total_sq = 0.0;
    for (auto r : rows) {
      auto t = y_.row(r);
      for (std::size_t d = 0; d < dim; ++d) {
        total[d] += t[d];
        total_sq += t[d] * t[d];
      }
    }
    (void)st;
    Candidate best;
    std::vector<std::pair<double, std::uint32_t>> order(m);
    std::vector<double> left_sum(dim);
    for (auto c : columns_) {
      for (std::size_t i = 0; i < m; ++i) order[i] = {table_.value(rows[i], c), rows[i]};
      std::sort(order.begin(), order.end());
      if (order.front().first == order.back().first) continue;
      std::fill(left_sum.begin(), left_sum.end(), 0.0);
      double left_sq = 0.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        auto t = y_.row(order[i].second);
        for (std::size_t d = 0; d < dim; ++d) {
          left_sum[d] += t[d];
          left_sq += t[d] * t[d];
        }
        if (order[i].first == order[i + 1].first) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = m - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        double l2 = 0.0;
        double r2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          l2 += left_sum[d] * left_sum[d];
          const double rs = total[d] - left_sum[d];
          r2 += rs * rs;
        }
        const double sse = (left_sq - l2 / static_cast<double>(nl)) + (total_sq - left_sq - r2 / static_cast<double>(nr));
        if (!best.found || sse < best.sse - eps) {
          best.found = true;
          best.sse = sse;
          best.column = c;
          const Rational lo = table_.exact_value(order[i].second, c);
          const Rational hi = table_.exact_value(order[i + 1].second, c);
          best.threshold = table_.column(c).kind == ValueKind::kCount ? Rational(lo.num() + (hi.num() - lo.num()) / 2)
                                                                      : Rational::midpoint(lo, hi);
        }
      }
    }
    return best;
  }

  const FeatureTable& table_;
  const FitOptions& options_;
  const TargetMatrix& y_;
  std::vector<std::size_t> columns_;
  DecisionTree tree_;
};

// Copies the subtree rooted at `i` into `out` in pre-order.
std::size_t copy_subtree(const std::vector<TreeNode>& in, std::size_t i, std::vector<TreeNode>& out) {
  const std::size_t index = out.size();
  out.push_back(in[i]);
  if (!in[i].is_leaf()) {
    const auto l = copy_subtree(in, static_cast<std::size_t>(in[i].left), out);
    out[index].left = static_cast<std::int32_t>(l);
    const auto r = copy_subtree(in, static_cast<std::size_t>(in[i].right), out);
    out[index].right = static_cast<std::int32_t>(r);
  }
  return index;
}

}  // namespace

DecisionTree fit_tree(const FeatureTable& table, const FitOptions& options) {
  if (table.targets().rows() != table.rows()) throw InvariantError("table has no targets");
  return Builder(table, options).run();
}

DecisionTree prune_ccp(const DecisionTree& tree, double alpha) {
  std::vector<TreeNode> nodes = tree.nodes;
  if (nodes.empty() || alpha <= 0.0) return tree;
  struct Sub {
    double leaf_sse = 0.0;
    std::size_t leaves = 0;
  };
  std::vector<Sub> sub(nodes.size());
  while (true) {
    std::function<void(std::size_t)> measure = [&](std::size_t i) {
      if (nodes[i].is_leaf()) {
        sub[i] = {nodes[i].sse, 1};
        return;
      }
      const auto l = static_cast<std::size_t>(nodes[i].left);
      const auto r = static_cast<std::size_t>(nodes[i].right);
      measure(l);
      measure(r);
      sub[i] = {sub[l].leaf_sse + sub[r].leaf_sse, sub[l].leaves + sub[r].leaves};
    };
    measure(0);
    std::optional<std::size_t> weakest;
    double weakest_g = 0.0;
    std::vector<std::size_t> stack{0};
    std::vector<std::size_t> internal;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      if (nodes[i].is_leaf()) continue;
      internal.push_back(i);
      stack.push_back(static_cast<std::size_t>(nodes[i].right));
      stack.push_back(static_cast<std::size_t>(nodes[i].left));
    }
    for (auto i : internal) {
      const double g = std::max(0.0, nodes[i].sse - sub[i].leaf_sse) / static_cast<double>(sub[i].leaves - 1);
      if (!weakest || g < weakest_g) {
        weakest = i;
        weakest_g = g;
      }
    }
    if (!weakest || weakest_g > alpha) break;
    // Collapse: gather the training rows of every leaf below.
    auto& node = nodes[*weakest];
    std::vector<std::uint32_t> rows;
    std::vector<std::size_t> walk{*weakest};
    while (!walk.empty()) {
      const auto i = walk.back();
      walk.pop_back();
      if (nodes[i].is_leaf()) {
        rows.insert(rows.end(), nodes[i].rows.begin(), nodes[i].rows.end());
      } else {
        walk.push_back(static_cast<std::size_t>(nodes[i].right));
        walk.push_back(static_cast<std::size_t>(nodes[i].left));
      }
    }
    std::sort(rows.begin(), rows.end());
    node.rows = std::move(rows);
    node.split.reset();
    node.left = node.right = -1;
  }
  DecisionTree out;
  copy_subtree(nodes, 0, out.nodes);
  return out;
}

std::size_t tree_leaf(const DecisionTree& tree, const FeatureTable& table, std::size_t row) {
  std::size_t i = 0;
  while (!tree.nodes[i].is_leaf()) {
    const SplitTest& s = *tree.nodes[i].split;
    const auto col = table.find_column(s.feature);
    if (!col) throw DataError("tree splits on a column the table does not have");
    i = static_cast<std::size_t>(table.exceeds(row, *col, s.threshold) ? tree.nodes[i].right : tree.nodes[i].left);
  }
  return i;
}

std::span<const double> tree_predict(const DecisionTree& tree, const FeatureTable& table, std::size_t row) {
  return tree.nodes[tree_leaf(tree, table, row)].value;
}

std::vector<std::size_t> random_feature_mask(std::size_t cols, double rate, std::uint64_t seed) {
  if (cols == 0) return {};
  const auto want = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(rate * static_cast<double>(cols))), 1, cols);
  std::vector<std::size_t> all(cols);
  std::iota(all.begin(), all.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `want` entries are a uniform sample.
  for (std::size_t i = 0; i < want; ++i) std::swap(all[i], all[i + rng.uniform_index(cols - i)]);
  all.resize(want);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace idt
