#include "rwk/set_families.hpp"

#include "rwk/errors.hpp"

#include <algorithm>
#include <string>

namespace rwk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_positive(const BigInt& x, const char* what) {
  if (x < BigInt(1)) throw ContractViolation(std::string(what) + " must be >= 1");
}

std::uint64_t checked_count(const BigInt& n, std::uint64_t cap) {
  if (n > BigInt(static_cast<unsigned long>(cap)))
    throw BudgetExceeded("window holds " + n.to_string() + " points, cap is " + std::to_string(cap));
  return static_cast<std::uint64_t>(n.to_int64());
}

template <typename Alternative>
ZSet make_zset(Alternative alt) {
  return ZSet(std::make_shared<const ZSet::Node>(ZSet::Node{std::move(alt)}));
}

template <typename Alternative>
ZvSet make_zvset(Alternative alt, Eigen::Index dimension) {
  return ZvSet(std::make_shared<const ZvSet::Node>(ZvSet::Node{std::move(alt)}), dimension);
}

}  // namespace

ZSet congruence(const BigInt& modulus, const BigInt& residue) {
  check_positive(modulus, "congruence modulus");
  return make_zset(zset::Congruence{modulus, mod(residue, modulus)});
}

ZSet all_integers() { return congruence(BigInt(1), BigInt(0)); }

ZSet union_of(std::vector<ZSet> parts) { return make_zset(zset::Union{std::move(parts)}); }

ZSet intersection_of(std::vector<ZSet> parts) { return make_zset(zset::Intersection{std::move(parts)}); }

ZSet complement_of(ZSet inner) { return make_zset(zset::Complement{std::move(inner)}); }

ZSet periodic_intervals(const BigInt& period, std::vector<std::pair<BigInt, BigInt>> intervals) {
  check_positive(period, "period");
  for (const auto& [lo, hi] : intervals)
    if (lo.sign() < 0 || hi >= period || lo > hi)
      throw ContractViolation("periodic interval [" + lo.to_string() + ", " + hi.to_string() +
                              "] must satisfy 0 <= lo <= hi < period");
  return make_zset(zset::PeriodicIntervals{period, std::move(intervals)});
}

ZSet finite_sums(IntSeq generator, std::size_t depth, std::uint64_t max_sums) {
  if (depth < 1) throw ContractViolation("finite-sums depth must be >= 1");
  const std::size_t n = generator.length();
  const std::size_t top = std::min(depth, n);
  // Count subsets of size 1..top before materializing them.
  BigInt total(0), binom(1);
  for (std::size_t j = 1; j <= top; ++j) {
    binom = exact_div(binom * BigInt(n - j + 1), BigInt(j));
    total += binom;
  }
  checked_count(total, max_sums);

  std::vector<BigInt> sums;
  IndexSet chosen;
  std::function<void(std::size_t, const BigInt&)> extend = [&](std::size_t next, const BigInt& acc) {
    for (std::size_t t = next; t <= n; ++t) {
      const BigInt s = acc + generator(t);
      sums.push_back(s);
      if (chosen.size() + 1 < top) {
        chosen.push_back(t);
        extend(t + 1, s);
        chosen.pop_back();
      }
    }
  };
  extend(1, BigInt(0));
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return make_zset(zset::FiniteSums{std::move(generator), depth, std::move(sums)});
}

ZSet explicit_set(std::vector<BigInt> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return make_zset(zset::Explicit{std::move(elements)});
}

ZSet shifted(const BigInt& offset, ZSet inner) { return make_zset(zset::Shift{offset, std::move(inner)}); }

bool contains(const ZSet& s, const BigInt& x) {
  return std::visit(
      Overloaded{
          [&](const zset::Congruence& c) { return mod(x, c.modulus) == c.residue; },
          [&](const zset::Union& u) {
            return std::any_of(u.parts.begin(), u.parts.end(), [&](const ZSet& p) { return contains(p, x); });
          },
          [&](const zset::Intersection& i) {
            return std::all_of(i.parts.begin(), i.parts.end(), [&](const ZSet& p) { return contains(p, x); });
          },
          [&](const zset::Complement& c) { return !contains(c.inner, x); },
          [&](const zset::PeriodicIntervals& p) {
            const BigInt r = mod(x, p.period);
            return std::any_of(p.intervals.begin(), p.intervals.end(),
                               [&](const auto& iv) { return iv.first <= r && r <= iv.second; });
          },
          [&](const zset::FiniteSums& f) { return std::binary_search(f.sums.begin(), f.sums.end(), x); },
          [&](const zset::Explicit& e) { return std::binary_search(e.elements.begin(), e.elements.end(), x); },
          [&](const zset::Shift& sh) { return contains(sh.inner, x - sh.offset); },
      },
      s.node().value);
}

std::vector<BigInt> enumerate_window(const ZSet& s, const BigInt& lo, const BigInt& hi, std::uint64_t max_points) {
  if (lo > hi) throw ContractViolation("window lower bound exceeds upper bound");
  checked_count(hi - lo + BigInt(1), max_points);
  std::vector<BigInt> out;
  for (BigInt x = lo; x <= hi; x += BigInt(1))
    if (contains(s, x)) out.push_back(x);
  return out;
}

std::optional<BigInt> period(const ZSet& s) {
  return std::visit(
      Overloaded{
          [](const zset::Congruence& c) -> std::optional<BigInt> { return c.modulus; },
          [](const zset::PeriodicIntervals& p) -> std::optional<BigInt> { return p.period; },
          [](const zset::Complement& c) { return period(c.inner); },
          [](const zset::Shift& sh) { return period(sh.inner); },
          [](const zset::Union& u) -> std::optional<BigInt> {
            BigInt acc(1);
            for (const auto& p : u.parts) {
              auto q = period(p);
              if (!q) return std::nullopt;
              acc = lcm(acc, *q);
            }
            return acc;
          },
          [](const zset::Intersection& u) -> std::optional<BigInt> {
            BigInt acc(1);
            for (const auto& p : u.parts) {
              auto q = period(p);
              if (!q) return std::nullopt;
              acc = lcm(acc, *q);
            }
            return acc;
          },
          [](const zset::FiniteSums&) -> std::optional<BigInt> { return std::nullopt; },
          [](const zset::Explicit&) -> std::optional<BigInt> { return std::nullopt; },
      },
      s.node().value);
}

std::optional<std::pair<BigInt, BigInt>> bounding_interval(const ZSet& s) {
  using Interval = std::pair<BigInt, BigInt>;
  const Interval empty{BigInt(1), BigInt(0)};
  return std::visit(
      Overloaded{
          [&](const zset::Explicit& e) -> std::optional<Interval> {
            if (e.elements.empty()) return empty;
            return Interval{e.elements.front(), e.elements.back()};
          },
          [&](const zset::FiniteSums& f) -> std::optional<Interval> {
            if (f.sums.empty()) return empty;
            return Interval{f.sums.front(), f.sums.back()};
          },
          [&](const zset::Shift& sh) -> std::optional<Interval> {
            auto inner = bounding_interval(sh.inner);
            if (!inner) return std::nullopt;
            if (inner->first > inner->second) return empty;
            return Interval{inner->first + sh.offset, inner->second + sh.offset};
          },
          [&](const zset::Union& u) -> std::optional<Interval> {
            std::optional<Interval> acc = empty;
            for (const auto& p : u.parts) {
              auto q = bounding_interval(p);
              if (!q) return std::nullopt;
              if (q->first > q->second) continue;
              if (acc->first > acc->second) {
                acc = q;
              } else {
                acc = Interval{std::min(acc->first, q->first), std::max(acc->second, q->second)};
              }
            }
            return acc;
          },
          [&](const zset::Intersection& u) -> std::optional<Interval> {
            std::optional<Interval> acc;
            for (const auto& p : u.parts) {
              auto q = bounding_interval(p);
              if (!q) continue;
              acc = acc ? Interval{std::max(acc->first, q->first), std::min(acc->second, q->second)} : *q;
            }
            return acc;
          },
          [](const auto&) -> std::optional<Interval> { return std::nullopt; },
      },
      s.node().value);
}

ZvSet::ZvSet(std::shared_ptr<const Node> node, Eigen::Index dimension)
    : node_(std::move(node)), dimension_(dimension) {
  if (dimension < 1) throw ContractViolation("set dimension must be >= 1");
}

ZvSet product_of(std::vector<ZSet> factors) {
  const auto v = static_cast<Eigen::Index>(factors.size());
  return make_zvset(zvset::Product{std::move(factors)}, v);
}

ZvSet preimage_set(const RatMatrix& a, ZSet b) {
  ClearedMatrix cleared = clear_denominators(a);
  return make_zvset(zvset::Preimage{a, std::move(b), std::move(cleared)}, a.cols());
}

ZvSet explicit_vectors(Eigen::Index dimension, std::vector<IntVector> elements) {
  for (const auto& e : elements)
    if (e.size() != dimension) throw ContractViolation("explicit vector has wrong dimension");
  std::sort(elements.begin(), elements.end(), LexLess{});
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const IntVector& a, const IntVector& b) { return a == b; }),
                 elements.end());
  return make_zvset(zvset::Explicit{std::move(elements)}, dimension);
}

ZvSet shifted(const IntVector& offset, ZvSet inner) {
  if (offset.size() != inner.dimension()) throw ContractViolation("shift offset has wrong dimension");
  const Eigen::Index v = inner.dimension();
  return make_zvset(zvset::Shift{offset, std::move(inner)}, v);
}

namespace {
Eigen::Index common_dimension(const std::vector<ZvSet>& parts) {
  if (parts.empty()) throw ContractViolation("set combination needs at least one part");
  for (const auto& p : parts)
    if (p.dimension() != parts.front().dimension()) throw ContractViolation("combined sets differ in dimension");
  return parts.front().dimension();
}
}  // namespace

ZvSet union_of(std::vector<ZvSet> parts) {
  const Eigen::Index v = common_dimension(parts);
  return make_zvset(zvset::Union{std::move(parts)}, v);
}

ZvSet intersection_of(std::vector<ZvSet> parts) {
  const Eigen::Index v = common_dimension(parts);
  return make_zvset(zvset::Intersection{std::move(parts)}, v);
}

ZvSet complement_of(ZvSet inner) {
  const Eigen::Index v = inner.dimension();
  return make_zvset(zvset::Complement{std::move(inner)}, v);
}

bool contains(const ZvSet& s, const IntVector& y) {
  if (y.size() != s.dimension()) throw ContractViolation("point dimension does not match set dimension");
  return std::visit(
      Overloaded{
          [&](const zvset::Product& p) {
            for (Eigen::Index i = 0; i < y.size(); ++i)
              if (!contains(p.factors[static_cast<std::size_t>(i)], y(i))) return false;
            return true;
          },
          [&](const zvset::Preimage& p) {
            // A y = (dA) y / d entrywise; integrality is divisibility by d.
            const IntMatrix& scaled = p.cleared.scaled;
            for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
              BigInt row(0);
              for (Eigen::Index j = 0; j < scaled.cols(); ++j) row += scaled(i, j) * y(j);
              if (!divides(p.cleared.d, row)) return false;
              if (!contains(p.target, exact_div(row, p.cleared.d))) return false;
            }
            return true;
          },
          [&](const zvset::Explicit& e) {
            return std::binary_search(e.elements.begin(), e.elements.end(), y, LexLess{});
          },
          [&](const zvset::Shift& sh) { return contains(sh.inner, IntVector(y - sh.offset)); },
          [&](const zvset::Union& u) {
            return std::any_of(u.parts.begin(), u.parts.end(), [&](const ZvSet& p) { return contains(p, y); });
          },
          [&](const zvset::Intersection& u) {
            return std::all_of(u.parts.begin(), u.parts.end(), [&](const ZvSet& p) { return contains(p, y); });
          },
          [&](const zvset::Complement& c) { return !contains(c.inner, y); },
      },
      s.node().value);
}

BigInt Box::volume() const {
  if (lo.size() != hi.size()) throw ContractViolation("box corners differ in dimension");
  BigInt v(1);
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo(i) > hi(i)) throw ContractViolation("box lower corner exceeds upper corner");
    v *= hi(i) - lo(i) + BigInt(1);
  }
  return v;
}

Box cube(Eigen::Index dimension, const BigInt& lo, const BigInt& hi) {
  return {constant_vector(dimension, lo), constant_vector(dimension, hi)};
}

bool for_each_point(const Box& box, const std::function<bool(const IntVector&)>& visit) {
  (void)box.volume();
  const Eigen::Index v = box.dimension();
  if (v == 0) return true;
  IntVector p = box.lo;
  for (;;) {
    if (!visit(p)) return false;
    Eigen::Index i = v - 1;
    while (i >= 0 && p(i) == box.hi(i)) {
      p(i) = box.lo(i);
      --i;
    }
    if (i < 0) return true;
    p(i) += BigInt(1);
  }
}

std::vector<IntVector> enumerate_window(const ZvSet& s, const Box& box, std::uint64_t max_points) {
  if (box.dimension() != s.dimension()) throw ContractViolation("box dimension does not match set dimension");
  checked_count(box.volume(), max_points);
  std::vector<IntVector> out;
  for_each_point(box, [&](const IntVector& p) {
    if (contains(s, p)) out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace rwk
