#include "qcd/payoff.hpp"

#include <cmath>
#include <numbers>

#include "qcd/deterministic_fn.hpp"
#include "qcd/errors.hpp"

namespace qcd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> parse_list(std::string_view list, std::string_view context) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = list.find(',', start);
        const std::string token(list.substr(start, comma - start));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (token.empty() || used != token.size() || !std::isfinite(v)) {
            throw InvalidArgument("malformed number '" + token + "' in payoff '" +
                                  std::string(context) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

}  // namespace

Payoff parse_payoff(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::vector<double> params =
        colon == std::string_view::npos ? std::vector<double>{}
                                        : parse_list(text.substr(colon + 1), text);
    if (kind == "indicator" && params.size() == 1) {
        return Indicator{params[0]};
    }
    if (kind == "poly" && !params.empty()) {
        return Polynomial{params};
    }
    if (kind == "sin" && params.empty()) {
        return Trig{};
    }
    if (kind == "cos" && params.empty()) {
        return Trig{1.0, 1.0, std::numbers::pi / 2.0};
    }
    if (kind == "sin" && params.size() == 3) {
        return Trig{params[0], params[1], params[2]};
    }
    throw Unsupported("payoff '" + std::string(text) +
                      "' is not in the catalog (indicator:K, poly:c0,..., sin, cos, sin:A,w,phi)");
}

std::string to_string(const Payoff& payoff) {
    return std::visit(
        Overloaded{
            [](const Indicator& p) { return "indicator:" + format_double(p.strike); },
            [](const Polynomial& p) {
                std::string out = "poly:";
                for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
                    out += (i ? "," : "") + format_double(p.coeffs[i]);
                }
                return out;
            },
            [](const Trig& p) {
                return "sin:" + format_double(p.amplitude) + "," + format_double(p.frequency) +
                       "," + format_double(p.phase);
            },
        },
        payoff);
}

double evaluate(const Payoff& payoff, double y) {
    return std::visit(Overloaded{
                          [y](const Indicator& p) { return y >= p.strike ? 1.0 : 0.0; },
                          [y](const Polynomial& p) {
                              double v = 0.0;
                              for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
                                  v = v * y + *it;
                              }
                              return v;
                          },
                          [y](const Trig& p) {
                              return p.amplitude * std::sin(p.frequency * y + p.phase);
                          },
                      },
                      payoff);
}

bool is_indicator(const Payoff& payoff) { return std::holds_alternative<Indicator>(payoff); }

Payoff derivative(const Payoff& payoff) {
    return std::visit(
        Overloaded{
            [](const Indicator&) -> Payoff {
                throw Unsupported("the indicator payoff has no classical derivative");
            },
            [](const Polynomial& p) -> Payoff {
                if (p.coeffs.size() <= 1) {
                    return Polynomial{{0.0}};
                }
                std::vector<double> d(p.coeffs.size() - 1);
                for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
                    d[k - 1] = static_cast<double>(k) * p.coeffs[k];
                }
                return Polynomial{d};
            },
            [](const Trig& p) -> Payoff {
                return Trig{p.amplitude * p.frequency, p.frequency, p.phase + std::numbers::pi / 2.0};
            },
        },
        payoff);
}

}  // namespace qcd
