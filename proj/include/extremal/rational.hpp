#pragma once

#include <gmpxx.h>

namespace extremal {

// gmpxx stops its built-in conversions at long, so long long values funnel
// through these. long is 64 bits on every target we build for.
static_assert(sizeof(long) == 8, "needs 64-bit long for GMP conversions");

inline mpz_class mpz_of(long long v) { return mpz_class((long)v); }

inline mpq_class mpq_of(long long v) { return mpq_class((long)v); }

inline mpq_class mpq_ratio(long long num, long long den) {
    mpq_class q(mpz_of(num), mpz_of(den));
    q.canonicalize();
    return q;
}

} // namespace extremal
