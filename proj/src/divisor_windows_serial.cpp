#include <stdexcept>

#include "cubelens/divisor_windows.hpp"

namespace cubelens::serial {

Thm22Scan thm22_scan(std::uint64_t m_from, std::uint64_t m_to, const Ratio& alpha,
                     const Ratio& beta, std::size_t precision_cap) {
  if (m_from < 2) throw std::domain_error("thm22_scan: m_from must be at least 2");
  if (m_to < m_from) throw std::invalid_argument("thm22_scan: empty range");
  Thm22Scan out;
  out.m_from = m_from;
  out.m_to = m_to;
  out.alpha = alpha;
  out.beta = beta;
  out.regime = classify_regime(alpha, beta);
  out.argmax_m = m_from;
  for (std::uint64_t m = m_from; m <= m_to; ++m) {
    const WindowCount w =
        window_count_exponent(Natural(static_cast<unsigned long>(m)), alpha, beta, precision_cap);
    ++out.histogram[w.count];
    out.unresolved += w.unresolved;
    if (w.count > out.max_count) {
      out.max_count = w.count;
      out.argmax_m = m;
      out.new_maxima.push_back({m, w.count});
    }
  }
  return out;
}

}  // namespace cubelens::serial
