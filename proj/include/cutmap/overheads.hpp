#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace cutmap {

using BigInt = boost::multiprecision::cpp_int;

/// 4^k1 * 6^k2 recombination terms.
BigInt postproc_overhead(int k1, int k2);
/// 16^k1 * 9^k2 sampling factor before any reuse discount.
BigInt sampling_overhead(int k1, int k2);
/// log10 of a positive big integer, accurate for any size.
double log10_big(const BigInt &v);
/// Decimal text for small values, "d.ddde+NN" scientific form above 1e15.
std::string format_big(const BigInt &v);

/// Executable settings of a sub-circuit with w_in prepared and w_out measured cut wires:
/// 4^w_in * 3^w_out.
std::uint64_t variant_count(int w_in, int w_out);

}  // namespace cutmap
