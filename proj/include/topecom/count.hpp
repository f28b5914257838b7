#ifndef TOPECOM_COUNT_HPP
#define TOPECOM_COUNT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace topecom {

// Exact integer for formula accumulators: alternating sums overshoot the
// final counts by orders of magnitude, so fixed width is not trusted.
using Count = boost::multiprecision::cpp_int;

} // namespace topecom

#endif
