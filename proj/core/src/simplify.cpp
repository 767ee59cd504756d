#include "idt/simplify.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace idt {

namespace {

using K = Formula::Kind;

struct TestKey {
  Modal modal;
  Formula child;
  bool relative;

  friend auto operator<=>(const TestKey&, const TestKey&) = default;
};

/// Values v with lo < v <= hi; a missing bound is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

/// Sorted, disjoint, non-touching union of intervals.
using IntervalSet = std::vector<Interval>;

bool lo_less(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b.has_value();
  return b && *a < *b;
}

IntervalSet normalize(IntervalSet s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](const Interval& i) { return i.lo && i.hi && *i.hi <= *i.lo; }),
          s.end());
  std::sort(s.begin(), s.end(), [](const Interval& a, const Interval& b) { return lo_less(a.lo, b.lo); });
  IntervalSet out;
  for (const auto& i : s) {
    if (!out.empty()) {
      auto& last = out.back();
      // (a, b] and (c, d] with c <= b overlap or touch.
      if (!last.hi || !i.lo || *i.lo <= *last.hi) {
        if (last.hi && (!i.hi || *last.hi < *i.hi)) last.hi = i.hi;
        continue;
      }
    }
    out.push_back(i);
  }
  return out;
}

IntervalSet complement(const IntervalSet& s) {
  IntervalSet out;
  std::optional<Rational> cursor;  // -inf
  bool open_start = true;
  for (const auto& i : s) {
    if (i.lo) out.push_back({open_start ? std::nullopt : cursor, i.lo});
    if (!i.hi) return normalize(out);
    cursor = i.hi;
    open_start = false;
  }
  out.push_back({open_start ? std::nullopt : cursor, std::nullopt});
  return normalize(out);
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet all = a;
  all.insert(all.end(), b.begin(), b.end());
  return normalize(all);
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  return complement(unite(complement(a), complement(b)));
}

struct KeyedSet {
  TestKey key;
  IntervalSet set;
};

std::optional<KeyedSet> as_intervals(const Formula& f) {
  switch (f.kind()) {
    case K::kCountGt:
      return KeyedSet{{f.modal(), f.child(), false},
                      {{Rational(static_cast<std::int64_t>(f.count_threshold())), std::nullopt}}};
    case K::kRatioGt: return KeyedSet{{f.modal(), f.child(), true}, {{f.ratio_threshold(), std::nullopt}}};
    case K::kNot: {
      auto inner = as_intervals(f.child());
      if (!inner) return std::nullopt;
      inner->set = complement(inner->set);
      return inner;
    }
    case K::kAnd:
    case K::kOr: {
      auto a = as_intervals(f.lhs());
      auto b = as_intervals(f.rhs());
      if (!a || !b || !(a->key == b->key)) return std::nullopt;
      a->set = f.kind() == K::kAnd ? intersect(a->set, b->set) : unite(a->set, b->set);
      return a;
    }
    default: return std::nullopt;
  }
}

Formula threshold_test(const TestKey& key, const Rational& t) {
  if (key.relative) return Formula::ratio_gt(key.modal, key.child, t);
  return Formula::count_gt(key.modal, key.child, static_cast<std::uint64_t>(t.num()));
}

Formula interval_formula(const TestKey& key, const Interval& i) {
  if (i.lo && i.hi) return Formula::conj(threshold_test(key, *i.lo), Formula::negate(threshold_test(key, *i.hi)));
  if (i.lo) return threshold_test(key, *i.lo);
  if (i.hi) return Formula::negate(threshold_test(key, *i.hi));
  return Formula::top();
}

Formula to_formula(const KeyedSet& ks) {
  const auto& s = ks.set;
  if (s.empty()) return Formula::bottom();
  if (s.size() == 1) return interval_formula(ks.key, s[0]);
  const IntervalSet comp = complement(s);
  if (comp.size() == 1) return Formula::negate(interval_formula(ks.key, comp[0]));
  std::vector<Formula> parts;
  for (const auto& i : s) parts.push_back(interval_formula(ks.key, i));
  return Formula::disj_all(parts);
}

void flatten(const Formula& f, K kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    flatten(f.lhs(), kind, out);
    flatten(f.rhs(), kind, out);
  } else {
    out.push_back(f);
  }
}

bool is_negation_of(const Formula& a, const Formula& b) {
  return (a.kind() == K::kNot && a.child() == b) || (b.kind() == K::kNot && b.child() == a);
}

Formula simplify_once(const Formula& f);

Formula simplify_junction(const Formula& f) {
  const bool is_and = f.kind() == K::kAnd;
  std::vector<Formula> raw;
  flatten(f, f.kind(), raw);
  std::vector<Formula> operands;
  for (const auto& r : raw) flatten(simplify_once(r), f.kind(), operands);

  // Slots preserve the order of first appearance; a slot is either a keyed
  // interval group or a plain operand.
  struct Slot {
    std::optional<KeyedSet> group;
    Formula plain;
  };
  std::vector<Slot> slots;
  std::map<TestKey, std::size_t> group_slot;
  for (const auto& op : operands) {
    if (op.kind() == K::kTop) {
      if (is_and) continue;
      return Formula::top();
    }
    if (op.is_bottom()) {
      if (!is_and) continue;
      return Formula::bottom();
    }
    if (auto ks = as_intervals(op)) {
      auto it = group_slot.find(ks->key);
      if (it == group_slot.end()) {
        group_slot.emplace(ks->key, slots.size());
        slots.push_back({std::move(ks), Formula()});
      } else {
        auto& set = slots[it->second].group->set;
        set = is_and ? intersect(set, ks->set) : unite(set, ks->set);
      }
      continue;
    }
    const bool seen = std::any_of(slots.begin(), slots.end(), [&](const Slot& s) { return !s.group && s.plain == op; });
    if (!seen) slots.push_back({std::nullopt, op});
  }

  std::vector<Formula> parts;
  for (const auto& s : slots) {
    Formula part = s.group ? to_formula(*s.group) : s.plain;
    if (part.kind() == K::kTop) {
      if (is_and) continue;
      return Formula::top();
    }
    if (part.is_bottom()) {
      if (!is_and) continue;
      return Formula::bottom();
    }
    parts.push_back(part);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (is_negation_of(parts[i], parts[j])) return is_and ? Formula::bottom() : Formula::top();
    }
  }
  return is_and ? Formula::conj_all(parts) : Formula::disj_all(parts);
}

Formula simplify_once(const Formula& f) {
  switch (f.kind()) {
    case K::kAtom:
    case K::kTop: return f;
    case K::kNot: {
      Formula c = simplify_once(f.child());
      if (c.kind() == K::kNot) return c.child();
      return Formula::negate(c);
    }
    case K::kAnd:
    case K::kOr: return simplify_junction(f);
    case K::kCountGt: {
      Formula c = simplify_once(f.child());
      const Modal m = f.modal();
      const std::uint64_t n = f.count_threshold();
      if (m == Modal::kZero || c.is_bottom()) return Formula::bottom();
      if (m == Modal::kId) return n == 0 ? c : Formula::bottom();
      // eps_S(v) always contains v for these parameters.
      if (c.kind() == K::kTop && n == 0 && (m == Modal::kOne || m == Modal::kIdPlusAdj)) return Formula::top();
      return Formula::count_gt(m, c, n);
    }
    case K::kRatioGt: {
      Formula c = simplify_once(f.child());
      const Modal m = f.modal();
      if (m == Modal::kZero || c.is_bottom()) return Formula::bottom();
      if (m == Modal::kId) return c;
      if (c.kind() == K::kTop) return simplify_once(Formula::count_gt(m, c, 0));
      return Formula::ratio_gt(m, c, f.ratio_threshold());
    }
  }
  return f;
}

}  // namespace

Formula simplify(const Formula& f) {
  Formula current = f;
  for (int round = 0; round < 8; ++round) {
    Formula next = simplify_once(current);
    if (next == current) break;
    current = next;
  }
  return current;
}

}  // namespace idt
