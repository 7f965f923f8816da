#pragma once

// Complex polynomials in variables z0..z{n-1}.
//
// Text grammar (whitespace ignored, indices 0-based):
//   expression  ::= ['+'|'-'] term (('+'|'-') term)*
//   term        ::= (coefficient | monomial) ('*'? monomial)*
//   monomial    ::= 'z' index ('^' exponent)?
//   coefficient ::= decimal | '(' ['-'] decimal ('+'|'-') decimal 'i' ')'

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "milnor/error.hpp"

namespace milnor::contact {

using Complex = std::complex<double>;
using Exponents = std::vector<unsigned>;

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static Polynomial variable(std::size_t num_vars, std::size_t index) {
        Polynomial p(num_vars);
        Exponents e(num_vars, 0);
        e.at(index) = 1;
        p.add_term(e, 1.0);
        return p;
    }

    static Polynomial constant(std::size_t num_vars, Complex value) {
        Polynomial p(num_vars);
        p.add_term(Exponents(num_vars, 0), value);
        return p;
    }

    /// Adds coeff * z^e, merging with an existing term; zero sums are dropped.
    void add_term(const Exponents& e, Complex coeff) {
        if (e.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "exponent vector has wrong length");
        Complex& slot = terms_[e];
        slot += coeff;
        if (slot == Complex{}) terms_.erase(e);
    }

    std::size_t num_vars() const { return num_vars_; }
    const std::map<Exponents, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Complex operator()(std::span<const Complex> z) const {
        check_arity(z.size());
        Complex total{};
        for (const auto& [e, c] : terms_) total += c * monomial(e, z, num_vars_);
        return total;
    }

    /// Holomorphic partial derivatives d/dz_j at z.
    std::vector<Complex> gradient(std::span<const Complex> z) const {
        check_arity(z.size());
        std::vector<Complex> out(num_vars_);
        for (const auto& [e, c] : terms_) {
            for (std::size_t j = 0; j < num_vars_; ++j) {
                if (e[j] == 0) continue;
                Exponents lowered = e;
                --lowered[j];
                out[j] += c * static_cast<double>(e[j]) * monomial(lowered, z, num_vars_);
            }
        }
        return out;
    }

    /// Sum of |c| |z^e| over terms: the natural size of the value at z.
    double magnitude(std::span<const Complex> z) const {
        check_arity(z.size());
        double total = 0.0;
        for (const auto& [e, c] : terms_) total += std::abs(c) * std::abs(monomial(e, z, num_vars_));
        return total;
    }

    /// Canonical text; parse_polynomial(to_string()) reproduces the term map.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Complex coeff = c;
            const bool negative = coeff.real() < 0 || (coeff.real() == 0 && coeff.imag() < 0);
            if (negative) coeff = -coeff;
            out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
            first = false;

            std::string mono;
            for (std::size_t j = 0; j < num_vars_; ++j) {
                if (e[j] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "z" + std::to_string(j);
                if (e[j] > 1) mono += "^" + std::to_string(e[j]);
            }
            std::string coeff_text;
            if (coeff.imag() == 0) {
                if (coeff.real() != 1.0 || mono.empty()) coeff_text = format_decimal(coeff.real());
            } else {
                coeff_text = "(" + format_decimal(coeff.real()) + (coeff.imag() < 0 ? "-" : "+") +
                             format_decimal(std::abs(coeff.imag())) + "i)";
            }
            if (!coeff_text.empty() && !mono.empty()) coeff_text += "*";
            out += coeff_text + mono;
        }
        return out;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    static Complex monomial(const Exponents& e, std::span<const Complex> z, std::size_t n) {
        Complex value{1.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            for (unsigned k = 0; k < e[j]; ++k) value *= z[j];
        return value;
    }

    static std::string format_decimal(double x) {
        char buffer[40];
        std::snprintf(buffer, sizeof buffer, "%.17g", x);
        return buffer;
    }

    void check_arity(std::size_t n) const {
        if (n != num_vars_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "polynomial in " + std::to_string(num_vars_) + " variables evaluated at a point of dimension " + std::to_string(n));
        }
    }

    std::size_t num_vars_ = 0;
    std::map<Exponents, Complex> terms_;
};

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

    Polynomial parse() {
        Polynomial result(num_vars_);
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        parse_term(result, sign);
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            parse_term(result, c == '-' ? -1.0 : 1.0);
        }
        return result;
    }

private:
    void parse_term(Polynomial& out, double sign) {
        skip_ws();
        Complex coeff{sign, 0.0};
        Exponents e(num_vars_, 0);
        if (peek() == 'z') {
            parse_monomial(e);
        } else if (peek() == '(' || std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            coeff *= parse_coefficient();
        } else {
            fail(at_end() ? "unexpected end of input, expected a term" : "expected a coefficient or monomial");
        }
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'z') fail("expected a monomial after '*'");
                parse_monomial(e);
            } else if (peek() == 'z') {
                parse_monomial(e);
            } else {
                break;
            }
        }
        out.add_term(e, coeff);
    }

    void parse_monomial(Exponents& e) {
        const std::size_t start = pos_;
        ++pos_;  // 'z'
        const unsigned long index = parse_unsigned("expected a variable index after 'z'");
        skip_ws();
        unsigned long power = 1;
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            power = parse_unsigned("expected an exponent after '^'");
        }
        if (index >= num_vars_) {
            throw Error(ErrorCode::UnknownVariable, "z" + std::to_string(index) + " at position " + std::to_string(start) +
                                                        " (only " + std::to_string(num_vars_) + " variables)");
        }
        e[index] += static_cast<unsigned>(power);
    }

    Complex parse_coefficient() {
        if (peek() != '(') return {parse_decimal(), 0.0};
        ++pos_;
        skip_ws();
        double re_sign = 1.0;
        if (peek() == '-') {
            re_sign = -1.0;
            ++pos_;
            skip_ws();
        }
        const double re = re_sign * parse_decimal();
        skip_ws();
        if (peek() != '+' && peek() != '-') fail("expected '+' or '-' inside complex coefficient");
        const double im_sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
        const double im = im_sign * parse_decimal();
        skip_ws();
        if (peek() != 'i') fail("expected 'i' after imaginary part");
        ++pos_;
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return {re, im};
    }

    double parse_decimal() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t count = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, ++count;
            return count;
        };
        std::size_t mantissa = digits();
        if (peek() == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            pos_ = start;
            fail("expected a decimal number");
        }
        if (peek() == 'e' || peek() == 'E') {
            const std::size_t mark = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (digits() == 0) pos_ = mark;
        }
        const std::string literal(text_.substr(start, pos_ - start));
        return std::strtod(literal.c_str(), nullptr);
    }

    unsigned long parse_unsigned(const char* message) {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail(message);
        unsigned long value = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || value > 1'000'000) {
            pos_ = start;
            fail("integer out of range");
        }
        return value;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorCode::SyntaxError, message + " at position " + std::to_string(pos_));
    }

    std::string_view text_;
    std::size_t num_vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, std::size_t num_vars) {
    return detail::PolynomialParser(text, num_vars).parse();
}

/// Number of variables a bare expression mentions: one more than the largest index.
inline std::size_t variables_mentioned(std::string_view text) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] != 'z') continue;
        std::size_t j = k + 1;
        std::size_t index = 0;
        bool any = false;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            index = index * 10 + static_cast<std::size_t>(text[j] - '0');
            any = true;
            ++j;
        }
        if (any) count = std::max(count, index + 1);
    }
    return count;
}

}  // namespace milnor::contact
