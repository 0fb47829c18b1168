#include "ffcount/irreducibles.hpp"

#include <algorithm>
#include <cmath>

namespace ffc {

namespace {

// Moebius function by trial-division factorization; d stays small (<= 1000).
int moebius(unsigned d) {
    int mu = 1;
    for (unsigned p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) return 0;
            mu = -mu;
        }
    }
    if (d > 1) mu = -mu;
    return mu;
}

} // namespace

std::uint64_t eval_poly(const Poly& f, std::uint64_t x, std::uint64_t q) {
    // Horner with the implicit leading 1.
    std::uint64_t acc = 1;
    for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) {
        acc = (acc * x + *it) % q;
    }
    return acc;
}

namespace {

// Full coefficient array including the leading 1, little-endian.
std::vector<std::uint32_t> with_leading(const Poly& f) {
    std::vector<std::uint32_t> v = f.c;
    v.push_back(1);
    return v;
}

// Long division of f by monic g; returns remainder, fills quotient if asked.
std::vector<std::uint32_t> divmod(const Poly& g, const Poly& f, std::uint64_t q,
                                  std::vector<std::uint32_t>* quot) {
    std::vector<std::uint32_t> rem = with_leading(f);
    const std::vector<std::uint32_t> div = with_leading(g);
    const size_t dg = g.degree();
    if (quot) quot->assign(f.degree() - dg + 1, 0);
    for (size_t i = rem.size(); i-- > dg;) {
        // subtract rem[i] * x^{i-dg} * g
        std::uint64_t c = rem[i];
        if (c == 0) continue;
        if (quot) (*quot)[i - dg] = static_cast<std::uint32_t>(c);
        for (size_t j = 0; j < div.size(); ++j) {
            std::uint64_t sub = c * div[j] % q;
            std::uint64_t cur = rem[i - dg + j];
            rem[i - dg + j] = static_cast<std::uint32_t>((cur + q - sub) % q);
        }
    }
    rem.resize(dg);
    return rem;
}

} // namespace

bool divides(const Poly& g, const Poly& f, std::uint64_t q) {
    if (g.degree() == 0) return true;
    if (g.degree() > f.degree()) return false;
    auto rem = divmod(g, f, q, nullptr);
    return std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; });
}

Poly quotient(const Poly& g, const Poly& f, std::uint64_t q) {
    std::vector<std::uint32_t> quot;
    auto rem = divmod(g, f, q, &quot);
    if (!std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; })) {
        throw verification_error("quotient called with a non-divisor");
    }
    // quot includes its leading 1; drop it for the implicit representation.
    Poly out;
    out.c.assign(quot.begin(), quot.end() - 1);
    return out;
}

Int count_irreducibles(const FieldSize& field, unsigned d) {
    if (d == 0) throw usage_error("irreducible count needs degree >= 1");
    Int sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = moebius(d / e);
        if (mu == 0) continue;
        Int t = pow_ui(static_cast<unsigned long>(field.q()), e);
        sum += mu > 0 ? t : -t;
    }
    Int count = sum / d;
    if (count * d != sum) throw verification_error("Moebius sum not divisible by degree");
    return count;
}

IrreducibleTable count_table(const FieldSize& field, unsigned d_max) {
    IrreducibleTable t{field, {}, {}};
    t.counts.resize(d_max + 1);
    for (unsigned d = 1; d <= d_max; ++d) t.counts[d] = count_irreducibles(field, d);
    return t;
}

IrreducibleTable enumerate_irreducibles(const FieldSize& field, unsigned d_max,
                                        double guard) {
    if (!field.is_prime()) {
        throw usage_error("enumeration supports prime q only, got q = " +
                          std::to_string(field.q()));
    }
    const double total = std::pow(static_cast<double>(field.q()), d_max);
    if (total > guard) {
        throw guard_error("enumeration guard: q^d_max = " + std::to_string(field.q()) +
                          "^" + std::to_string(d_max) + " exceeds " +
                          std::to_string(guard));
    }
    const std::uint64_t q = field.q();
    IrreducibleTable t = count_table(field, d_max);
    t.elements.resize(d_max + 1);
    for (unsigned d = 1; d <= d_max; ++d) {
        std::uint64_t span = 1;
        for (unsigned i = 0; i < d; ++i) span *= q;
        for (std::uint64_t idx = 0; idx < span; ++idx) {
            Poly f;
            f.c.resize(d);
            std::uint64_t rest = idx;
            for (unsigned i = 0; i < d; ++i) {
                f.c[i] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
            bool irred = true;
            if (d == 1) {
                irred = true;
            } else {
                for (unsigned e = 1; irred && 2 * e <= d; ++e) {
                    for (const Poly& g : t.elements[e]) {
                        if (divides(g, f, q)) {
                            irred = false;
                            break;
                        }
                    }
                }
            }
            if (irred) t.elements[d].push_back(std::move(f));
        }
        if (Int(static_cast<unsigned long>(t.elements[d].size())) != t.counts[d]) {
            throw verification_error("enumerated count disagrees with Moebius count at degree " +
                                     std::to_string(d));
        }
    }
    return t;
}

} // namespace ffc
