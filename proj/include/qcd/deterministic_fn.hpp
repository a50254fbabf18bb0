#pragma once

#include <string>
#include <string_view>

namespace qcd {

/*!
 * Deterministic function of time from a closed catalog: constant c or
 * linear a + b t. Integrals over [t0, t1] are evaluated in closed form.
 *
 * Text syntax: "const:c", "linear:a,b", or a bare number (constant).
 */
class DeterministicFn {
  public:
    enum class Family { Constant, Linear };

    DeterministicFn() = default;

    static DeterministicFn constant(double c);
    static DeterministicFn linear(double intercept, double slope);
    static DeterministicFn zero() { return constant(0.0); }

    /// Parses the text syntax; unknown families or malformed numbers throw
    /// InvalidArgument.
    static DeterministicFn parse(std::string_view text);

    Family family() const { return family_; }
    double intercept() const { return intercept_; }
    double slope() const { return slope_; }
    bool is_zero() const { return intercept_ == 0.0 && slope_ == 0.0; }

    double operator()(double t) const { return intercept_ + slope_ * t; }

    /// \int_{t0}^{t1} f(u) du
    double integral(double t0, double t1) const;

    /// \int_{t0}^{t1} f(u)^2 du
    double integral_of_square(double t0, double t1) const;

    /// sup over [0, horizon] of |f|
    double sup_abs(double horizon) const;

    /// Round-trippable text form (17 significant digits).
    std::string to_string() const;

    friend bool operator==(const DeterministicFn&, const DeterministicFn&) = default;

  private:
    DeterministicFn(Family family, double intercept, double slope)
        : family_(family), intercept_(intercept), slope_(slope) {}

    Family family_ = Family::Constant;
    double intercept_ = 0.0;
    double slope_ = 0.0;
};

/// Formats a double with 17 significant digits.
std::string format_double(double value);

}  // namespace qcd
