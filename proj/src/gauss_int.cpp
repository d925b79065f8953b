#include "bohm/gauss_int.hpp"

#include "bohm/errors.hpp"

#include <cctype>

namespace bohm {

BigInt GaussInt::max_component() const {
    BigInt a = abs(re);
    BigInt b = abs(im);
    return a > b ? a : b;
}

GaussInt& GaussInt::operator*=(const GaussInt& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    BigInt r = re * o.re - im * o.im;
    BigInt i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussInt divexact(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero Gaussian integer");
    if (b.is_real() && a.is_real()) {
        if (!mpz_divisible_p(a.re.get_mpz_t(), b.re.get_mpz_t()))
            throw InvalidArgument("inexact Gaussian division");
        return GaussInt(BigInt(a.re / b.re));
    }
    BigInt n = b.norm();
    GaussInt num = a * b.conj();
    if (!mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t()))
        throw InvalidArgument("inexact Gaussian division");
    return {BigInt(num.re / n), BigInt(num.im / n)};
}

int compare(const GaussInt& a, const GaussInt& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0 ? -1 : 1;
    c = cmp(a.im, b.im);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string to_string(const GaussInt& g) {
    std::string out = g.re.get_str();
    if (g.is_real()) return out;
    if (sgn(g.im) > 0) {
        out += '+';
        out += g.im.get_str();
    } else {
        out += g.im.get_str(); // carries its own '-'
    }
    out += 'i';
    return out;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Signed decimal integer with optional leading '+' or '-'.
BigInt parse_signed(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        neg = digits[0] == '-';
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) throw ParseError("bad Gaussian integer '" + std::string(whole) + "'");
    BigInt v(std::string(digits), 10);
    return neg ? BigInt(-v) : v;
}

// Imaginary coefficient text before the trailing 'i': "", "+", "-", "3", "+3", "-3".
BigInt parse_imag(std::string_view s, std::string_view whole) {
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    return parse_signed(s, whole);
}

} // namespace

GaussInt parse_gauss_int(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty Gaussian integer");
    if (s.back() != 'i') return GaussInt(parse_signed(s, text));

    std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not in leading position.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) return {BigInt(0), parse_imag(body, text)};
    return {parse_signed(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

GaussInt pow(const GaussInt& g, unsigned e) {
    GaussInt result(1);
    GaussInt base = g;
    while (e != 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e != 0) base *= base;
    }
    return result;
}

} // namespace bohm
