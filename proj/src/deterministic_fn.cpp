#include "qcd/deterministic_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qcd/errors.hpp"

namespace qcd {

namespace {

double parse_number(std::string_view token, std::string_view context) {
    const std::string text(token);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("malformed number '" + text + "' in '" + std::string(context) + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw InvalidArgument("malformed number '" + text + "' in '" + std::string(context) + "'");
    }
    return value;
}

std::vector<double> parse_numbers(std::string_view list, std::string_view context) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = list.find(',', start);
        out.push_back(parse_number(list.substr(start, comma - start), context));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
    return buf;
}

DeterministicFn DeterministicFn::constant(double c) {
    if (!std::isfinite(c)) {
        throw InvalidArgument("constant function value must be finite");
    }
    return {Family::Constant, c, 0.0};
}

DeterministicFn DeterministicFn::linear(double intercept, double slope) {
    if (!std::isfinite(intercept) || !std::isfinite(slope)) {
        throw InvalidArgument("linear function coefficients must be finite");
    }
    return {Family::Linear, intercept, slope};
}

DeterministicFn DeterministicFn::parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        return constant(parse_number(text, text));
    }
    const std::string_view family = text.substr(0, colon);
    const auto params = parse_numbers(text.substr(colon + 1), text);
    if (family == "const" && params.size() == 1) {
        return constant(params[0]);
    }
    if (family == "linear" && params.size() == 2) {
        return linear(params[0], params[1]);
    }
    throw InvalidArgument("unsupported function family '" + std::string(text) +
                          "' (expected const:c or linear:a,b)");
}

double DeterministicFn::integral(double t0, double t1) const {
    if (slope_ == 0.0) {
        return intercept_ * (t1 - t0);
    }
    return intercept_ * (t1 - t0) + 0.5 * slope_ * (t1 * t1 - t0 * t0);
}

double DeterministicFn::integral_of_square(double t0, double t1) const {
    if (slope_ == 0.0) {
        return intercept_ * intercept_ * (t1 - t0);
    }
    // (a + b u)^2 integrates to ((a + b t1)^3 - (a + b t0)^3) / (3 b)
    // written without the cancelling division:
    const double a = intercept_;
    const double b = slope_;
    return a * a * (t1 - t0) + a * b * (t1 * t1 - t0 * t0) +
           b * b * (t1 * t1 * t1 - t0 * t0 * t0) / 3.0;
}

double DeterministicFn::sup_abs(double horizon) const {
    return std::max(std::abs((*this)(0.0)), std::abs((*this)(horizon)));
}

std::string DeterministicFn::to_string() const {
    if (family_ == Family::Constant) {
        return "const:" + format_double(intercept_);
    }
    return "linear:" + format_double(intercept_) + "," + format_double(slope_);
}

}  // namespace qcd
