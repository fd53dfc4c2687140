#include "cutmap/overheads.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cutmap {

namespace {

BigInt ipow(unsigned base, int e) {
    if (e < 0) throw std::invalid_argument("negative cut count");
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

BigInt postproc_overhead(int k1, int k2) { return ipow(4, k1) * ipow(6, k2); }

BigInt sampling_overhead(int k1, int k2) { return ipow(16, k1) * ipow(9, k2); }

double log10_big(const BigInt &v) {
    if (v <= 0) throw std::invalid_argument("log10 of a non-positive value");
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits < 60) return std::log10(v.convert_to<double>());
    const unsigned shift = bits - 52;
    const double mant = static_cast<double>(static_cast<BigInt>(v >> shift));
    return std::log10(mant) + shift * std::log10(2.0);
}

std::string format_big(const BigInt &v) {
    if (v < BigInt(1000000000000000ULL)) return v.str();
    const double l = log10_big(v);
    const double e = std::floor(l);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3fe+%d", std::pow(10.0, l - e), static_cast<int>(e));
    return buf;
}

std::uint64_t variant_count(int w_in, int w_out) {
    if (w_in < 0 || w_out < 0) throw std::invalid_argument("negative wire count");
    std::uint64_t r = 1;
    for (int i = 0; i < w_in; ++i) r *= 4;
    for (int i = 0; i < w_out; ++i) r *= 3;
    return r;
}

}  // namespace cutmap
