#include "freenc/tracepoly.hpp"

namespace freenc {

TraceMonomial TraceMonomial::make(std::vector<Word> traces, Word tail, Involution mode) {
  const bool star = trace_star_mode(mode);
  for (Word& w : traces) w = cyclic_canonical(w, star);
  std::sort(traces.begin(), traces.end());
  return TraceMonomial{std::move(traces), std::move(tail)};
}

TraceMonomial TraceMonomial::operator*(const TraceMonomial& rhs) const {
  std::vector<Word> merged;
  merged.reserve(pure.size() + rhs.pure.size());
  std::merge(pure.begin(), pure.end(), rhs.pure.begin(), rhs.pure.end(),
             std::back_inserter(merged));
  return TraceMonomial{std::move(merged), tail * rhs.tail};
}

std::strong_ordering operator<=>(const TraceMonomial& a, const TraceMonomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.pure.begin(), a.pure.end(),
                                                       b.pure.begin(), b.pure.end());
      c != 0)
    return c;
  return a.tail <=> b.tail;
}

std::string to_string(const TraceMonomial& m) {
  std::string s;
  for (const Word& w : m.pure) {
    if (!s.empty()) s += ' ';
    s += "tr(" + to_string(w) + ")";
  }
  if (!m.tail.empty() || s.empty()) {
    if (!s.empty()) s += ' ';
    s += to_string(m.tail);
  }
  return s;
}

}  // namespace freenc
