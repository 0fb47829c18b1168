// Field size validation and the error taxonomy shared by all modules.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffc {

// CLI contract: usage_error and config_error exit 2, verification_error
// exits 1, everything else derived from error exits 1.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct usage_error : error {
    using error::error;
};
struct config_error : usage_error {
    using usage_error::usage_error;
};
struct verification_error : error {
    using error::error;
};
struct domain_error : error {
    using error::error;
};
struct pole_error : domain_error {
    using domain_error::domain_error;
};
struct range_error : error {
    using error::error;
};
struct guard_error : error {
    using error::error;
};
struct accuracy_error : error {
    using error::error;
};

// q must be a prime power p^e, validated by factoring q. Composite
// non-prime-powers (6, 12, ...) are rejected.
class FieldSize {
  public:
    explicit FieldSize(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t characteristic() const { return p_; }
    unsigned extension_degree() const { return e_; }
    bool is_prime() const { return e_ == 1; }

  private:
    std::uint64_t q_ = 0;
    std::uint64_t p_ = 0;
    unsigned e_ = 0;
};

} // namespace ffc
