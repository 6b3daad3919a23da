#include "rwk/sequences.hpp"

#include "rwk/errors.hpp"

#include <random>
#include <string>

namespace rwk {

IntSeq::IntSeq(std::vector<BigInt> values) : values_(std::move(values)) {
  if (values_.empty()) throw ContractViolation("sequence prefix must have length >= 1");
}

const BigInt& IntSeq::operator()(std::size_t t) const {
  if (t == 0) throw ContractViolation("sequences are indexed from 1");
  if (t > values_.size()) throw PrefixTooShort(t);
  return values_[t - 1];
}

VecSeq::VecSeq(std::vector<IntVector> values) : values_(std::move(values)) {
  if (values_.empty()) throw ContractViolation("sequence prefix must have length >= 1");
  const Eigen::Index v = values_.front().size();
  if (v < 1) throw ContractViolation("vector sequence dimension must be >= 1");
  for (const auto& x : values_)
    if (x.size() != v) throw ContractViolation("vector sequence entries differ in dimension");
}

const IntVector& VecSeq::operator()(std::size_t t) const {
  if (t == 0) throw ContractViolation("sequences are indexed from 1");
  if (t > values_.size()) throw PrefixTooShort(t);
  return values_[t - 1];
}

SeqFamily::SeqFamily(std::vector<VecSeq> members) : members_(std::move(members)) {
  if (members_.empty()) throw ContractViolation("sequence family must be nonempty");
  for (const auto& f : members_) {
    if (f.dimension() != members_.front().dimension())
      throw ContractViolation("family members differ in dimension");
    if (f.length() != members_.front().length())
      throw ContractViolation("family members differ in prefix length");
  }
}

IntSeq project(const VecSeq& f, std::size_t i) {
  if (i < 1 || static_cast<Eigen::Index>(i) > f.dimension())
    throw ContractViolation("projection index " + std::to_string(i) + " outside 1.." +
                            std::to_string(f.dimension()));
  std::vector<BigInt> out;
  out.reserve(f.length());
  for (const auto& x : f.values()) out.push_back(x(static_cast<Eigen::Index>(i - 1)));
  return IntSeq(std::move(out));
}

std::vector<IntSeq> projection_family(const SeqFamily& family) {
  std::vector<IntSeq> out;
  out.reserve(family.size() * static_cast<std::size_t>(family.dimension()));
  for (const auto& f : family)
    for (std::size_t i = 1; i <= static_cast<std::size_t>(f.dimension()); ++i) out.push_back(project(f, i));
  return out;
}

BigInt block_sum(const IntSeq& f, std::span<const std::size_t> indices) {
  BigInt s(0);
  for (std::size_t t : indices) s += f(t);
  return s;
}

IntVector block_sum(const VecSeq& f, std::span<const std::size_t> indices) {
  IntVector s = IntVector::Zero(f.dimension());
  for (std::size_t t : indices) s += f(t);
  return s;
}

namespace {

struct SequenceMaker {
  std::size_t length;

  std::vector<BigInt> operator()(const gen::Constant& g) const { return std::vector<BigInt>(length, g.value); }

  std::vector<BigInt> operator()(const gen::Arithmetic& g) const {
    std::vector<BigInt> out;
    out.reserve(length);
    BigInt x = g.start;
    for (std::size_t t = 0; t < length; ++t, x += g.step) out.push_back(x);
    return out;
  }

  std::vector<BigInt> operator()(const gen::Polynomial& g) const {
    if (g.coefficients.empty()) throw ConfigError("polynomial generator needs at least one coefficient");
    std::vector<BigInt> out;
    out.reserve(length);
    for (std::size_t t = 1; t <= length; ++t) {
      BigInt acc(0);
      for (auto it = g.coefficients.rbegin(); it != g.coefficients.rend(); ++it) acc = acc * BigInt(t) + *it;
      out.push_back(acc);
    }
    return out;
  }

  std::vector<BigInt> operator()(const gen::Table& g) const {
    if (g.values.size() < length)
      throw ConfigError("table generator has " + std::to_string(g.values.size()) + " values, need " +
                        std::to_string(length));
    return {g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(length)};
  }

  std::vector<BigInt> operator()(const gen::SeededUniform& g) const {
    if (g.lo > g.hi) throw ConfigError("uniform generator has lo > hi");
    if (!g.lo.fits_int64() || !g.hi.fits_int64()) throw ConfigError("uniform generator bounds must fit in 64 bits");
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<std::int64_t> dist(g.lo.to_int64(), g.hi.to_int64());
    std::vector<BigInt> out;
    out.reserve(length);
    for (std::size_t t = 0; t < length; ++t) out.emplace_back(static_cast<long>(dist(rng)));
    return out;
  }
};

}  // namespace

IntSeq make_sequence(const Generator& kind, std::size_t length) {
  if (length == 0) throw ConfigError("sequence length must be >= 1");
  return IntSeq(std::visit(SequenceMaker{length}, kind));
}

VecSeq make_sequence(std::span<const Generator> coordinates, std::size_t length) {
  if (coordinates.empty()) throw ConfigError("vector sequence needs at least one coordinate generator");
  if (length == 0) throw ConfigError("sequence length must be >= 1");
  std::vector<IntSeq> coords;
  for (const auto& g : coordinates) coords.push_back(make_sequence(g, length));
  std::vector<IntVector> values(length, IntVector(static_cast<Eigen::Index>(coords.size())));
  for (std::size_t t = 0; t < length; ++t)
    for (std::size_t i = 0; i < coords.size(); ++i) values[t](static_cast<Eigen::Index>(i)) = coords[i](t + 1);
  return VecSeq(std::move(values));
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "constant") return GeneratorKind::kConstant;
  if (name == "arithmetic") return GeneratorKind::kArithmetic;
  if (name == "polynomial") return GeneratorKind::kPolynomial;
  if (name == "uniform") return GeneratorKind::kUniform;
  throw ConfigError("unknown generator kind '" + std::string(name) + "'");
}

Generator sample_generator(std::span<const GeneratorKind> kinds, const BigInt& lo, const BigInt& hi,
                           std::mt19937_64& rng) {
  if (kinds.empty()) throw ConfigError("no generator kinds to sample from");
  if (lo > hi) throw ConfigError("sampling range has lo > hi");
  if (!lo.fits_int64() || !hi.fits_int64()) throw ConfigError("sampling bounds must fit in 64 bits");
  std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
  std::uniform_int_distribution<std::int64_t> value(lo.to_int64(), hi.to_int64());
  auto draw = [&] { return BigInt(static_cast<long>(value(rng))); };
  switch (kinds[pick(rng)]) {
    case GeneratorKind::kConstant:
      return gen::Constant{draw()};
    case GeneratorKind::kArithmetic: {
      BigInt start = draw();
      return gen::Arithmetic{start, draw()};
    }
    case GeneratorKind::kPolynomial: {
      const std::size_t degree = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
      std::vector<BigInt> coefficients;
      for (std::size_t i = 0; i <= degree; ++i) coefficients.push_back(draw());
      return gen::Polynomial{std::move(coefficients)};
    }
    case GeneratorKind::kUniform:
      return gen::SeededUniform{lo, hi, rng()};
  }
  throw ConfigError("unknown generator kind");
}

}  // namespace rwk
