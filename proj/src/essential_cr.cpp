#include "rwk/essential_cr.hpp"

#include "rwk/errors.hpp"

#include <algorithm>
#include <string>

namespace rwk {

namespace {

void check_index(std::size_t n, std::size_t length, const char* what) {
  if (n < 1 || n > length)
    throw ContractViolation(std::string(what) + " = " + std::to_string(n) + " outside 1.." + std::to_string(length));
}

}  // namespace

CRChain<ZvSet> chain_preimage(const RatMatrix& a, const CRChain<ZSet>& chain) {
  if (chain.sets.empty()) throw ContractViolation("chain must hold at least one set");
  CRChain<ZvSet> out;
  out.sets.reserve(chain.length());
  for (const auto& c : chain.sets) out.sets.push_back(preimage_set(a, c));
  return out;
}

template <typename Set>
bool verify_chain_shift(const CRChain<Set>& chain, std::size_t n, const typename SetTraits<Set>::Point& x,
                        std::size_t m, const typename SetTraits<Set>::Window& window) {
  check_index(n, chain.length(), "chain index n");
  check_index(m, chain.length(), "chain index m");
  if (!contains(chain[n], x)) throw ContractViolation("shift point is not a member of C_n");
  using Point = typename SetTraits<Set>::Point;
  return SetTraits<Set>::for_each(window, [&](const Point& z) {
    if (!contains(chain[m], z)) return true;
    return contains(chain[n], Point(x + z));
  });
}

template bool verify_chain_shift<ZSet>(const CRChain<ZSet>&, std::size_t, const BigInt&, std::size_t,
                                       const Interval&);
template bool verify_chain_shift<ZvSet>(const CRChain<ZvSet>&, std::size_t, const IntVector&, std::size_t,
                                        const Box&);

ShiftIndex find_shift_index(const CRChain<ZvSet>& preimage_chain, const RatMatrix& a,
                            const CRChain<ZSet>& chain, std::size_t n, const IntVector& y,
                            const Interval& row_window, const Box& box, std::size_t m_max) {
  check_index(n, chain.length(), "chain index n");
  if (preimage_chain.length() != chain.length()) throw ContractViolation("chains differ in length");
  if (!contains(preimage_chain[n], y)) throw ContractViolation("y is not a member of D_n");

  ShiftIndex out;
  const RatVector images = multiply(a, y);
  const std::size_t top = std::min(m_max, chain.length());
  for (Eigen::Index i = 0; i < images.size(); ++i) {
    if (!images(i).is_integer() || !contains(chain[n], images(i).to_integer()))
      throw ContractViolation("row image " + images(i).to_string() + " is not a member of C_n");
    const BigInt s = images(i).to_integer();
    out.row_images.push_back(s);

    // A verified hint caps the scan; the result is still the least index.
    std::size_t limit = top;
    std::optional<std::size_t> found;
    if (chain.shift_hint) {
      if (auto hint = chain.shift_hint(n, s); hint && *hint >= 1 && *hint <= top &&
                                               verify_chain_shift(chain, n, s, *hint, row_window)) {
        found = hint;
        limit = *hint - 1;
      }
    }
    for (std::size_t m = 1; m <= limit; ++m)
      if (verify_chain_shift(chain, n, s, m, row_window)) {
        found = m;
        break;
      }
    if (!found)
      throw ShiftExhausted("no m <= " + std::to_string(top) + " with C_m inside -" + s.to_string() + " + C_" +
                           std::to_string(n));
    out.row_indices.push_back(*found);
  }
  out.m = *std::max_element(out.row_indices.begin(), out.row_indices.end());
  out.window_check = verify_chain_shift(preimage_chain, n, y, out.m, box);
  return out;
}

}  // namespace rwk
