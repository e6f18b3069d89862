#include "ybhom/numbers.hpp"

namespace ybhom {

i64 checked_pow(i64 base, int exp, i64 limit) {
    i64 r = 1;
    for (int k = 0; k < exp; ++k) {
        if (base != 0 && r > limit / base)
            throw BudgetError("size " + std::to_string(base) + "^" + std::to_string(exp) +
                              " exceeds the configured entry budget " + std::to_string(limit));
        r *= base;
    }
    return r;
}

std::uint32_t next_prime_at_least(std::uint32_t n) {
    if (n <= 2) return 2;
    if (n % 2 == 0) ++n;
    for (;; n += 2) {
        bool prime = true;
        for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) return n;
    }
}

}  // namespace ybhom
