#ifndef BICOV_FORMAT_HPP
#define BICOV_FORMAT_HPP

#include <cstdio>
#include <string>

namespace bicov {

/// 10-significant-digit rendering used for all CSV output: '.' decimal
/// separator, no grouping, bit-stable for golden-file comparisons.
inline std::string format_sig10(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace bicov

#endif
