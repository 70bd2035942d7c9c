#pragma once

#include "cullen/bigint.hpp"

#include <array>
#include <cstdint>

namespace cullen {

/// Which characteristic root equals 1.
enum class UnitRoot { Alpha, Beta };

/// u_n = (a n + c) alpha^n + b beta^n, with exact rational a, b, c.
struct ClosedForm {
    std::int64_t alpha = 0;  // double root
    std::int64_t beta = 0;   // simple root
    Rational a;
    Rational b;
    Rational c;

    Rational double_root_term(std::uint64_t n) const;  // (a n + c) alpha^n
    Rational simple_root_term(std::uint64_t n) const;  // b beta^n
};

/// u_n = r1 u_{n-1} + r2 u_{n-2} + r3 u_{n-3} whose characteristic
/// polynomial is (X - alpha)^2 (X - beta) with 1 among the roots and
/// alpha / beta != +-1. Construct through make_recurrence.
class TernaryRecurrence {
public:
    const std::array<std::int64_t, 3>& coefficients() const { return coefficients_; }
    const std::array<std::int64_t, 3>& initial() const { return initial_; }

    /// max(|r_i|, |u_i|, 11)
    std::int64_t Y() const { return y_; }
    /// max(|alpha|, |beta|), always >= 2
    std::int64_t gamma() const { return gamma_; }

    std::int64_t alpha() const { return form_.alpha; }
    std::int64_t beta() const { return form_.beta; }
    UnitRoot unit_root() const { return unit_root_; }
    const ClosedForm& form() const { return form_; }

private:
    friend TernaryRecurrence make_recurrence(std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                                             std::int64_t, std::int64_t);
    TernaryRecurrence() = default;

    std::array<std::int64_t, 3> coefficients_{};
    std::array<std::int64_t, 3> initial_{};
    std::int64_t y_ = 0;
    std::int64_t gamma_ = 0;
    UnitRoot unit_root_ = UnitRoot::Beta;
    ClosedForm form_;
};

/// Validates the root structure and solves for the closed form, then checks
/// the closed form against the unrolled recurrence for n <= 64.
///
/// Throws InvalidArgument for a zero coefficient, DegenerateRecurrence when
/// the cubic is not (X - alpha)^2 (X - beta) with a unit root (or when a = 0,
/// i.e. the sequence never uses the double root), and RatioUnit when
/// alpha / beta = +-1.
TernaryRecurrence make_recurrence(std::int64_t r1, std::int64_t r2, std::int64_t r3, std::int64_t u0,
                                  std::int64_t u1, std::int64_t u2);

/// C_n = n 2^n + 1
TernaryRecurrence cullen_sequence();
/// W_n = n 2^n - 1
TernaryRecurrence woodall_sequence();

const ClosedForm& closed_form(const TernaryRecurrence& rec);

/// u_n from the closed form in exact arithmetic.
BigInt eval(const TernaryRecurrence& rec, std::uint64_t n);

/// ceil(39 Y log Y): every zero u_n has n strictly below this.
std::uint64_t zero_index_bound(const TernaryRecurrence& rec);

/// Lower bound on |u_n| for n > Y^8: |beta|^n / (2 Y^3) when |beta| > |alpha|,
/// else n |alpha|^n / (6 Y^3). Throws IndexTooSmall when n <= Y^8.
Rational growth_lower_bound(const TernaryRecurrence& rec, const BigInt& n);

/// Y^8
BigInt large_index_threshold(const TernaryRecurrence& rec);

}  // namespace cullen
