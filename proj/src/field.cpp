#include "ffcount/field.hpp"

namespace ffc {

FieldSize::FieldSize(std::uint64_t q) : q_(q) {
    if (q < 2) throw usage_error("field size must be at least 2, got " + std::to_string(q));
    std::uint64_t m = q;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = m;  // q itself is prime
    unsigned e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if (m != 1) {
        throw usage_error("field size " + std::to_string(q) +
                          " is not a prime power (divisible by " + std::to_string(p) +
                          " but not a power of it)");
    }
    p_ = p;
    e_ = e;
}

} // namespace ffc
