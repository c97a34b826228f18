#include "mmgeo/rat.hpp"

#include <cctype>
#include <limits>

namespace mmgeo {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rat Rat::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > kMax || n < -(__int128)kMax || d > kMax)
        throw std::overflow_error("Rat: value out of 64-bit range");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

std::string Rat::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    // Check for a 2^a 5^b denominator to emit a finite decimal.
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d == 1) {
        int k = twos > fives ? twos : fives;
        __int128 scale = 1;
        for (int i = 0; i < k; ++i) scale *= 10;
        __int128 scaled = (__int128)(num_ < 0 ? -num_ : num_) * (scale / den_);
        __int128 ip = scaled;
        for (int i = 0; i < k; ++i) ip /= 10;
        __int128 frac = scaled - ip * (scale);
        std::string digits;
        for (int i = 0; i < k; ++i) {
            digits.insert(digits.begin(), static_cast<char>('0' + (int)(frac % 10)));
            frac /= 10;
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string head = std::to_string((long long)ip);
        std::string out = (num_ < 0 ? "-" : "") + head + "." + digits;
        return out;
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rat::parse: empty string");
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        Rat n = parse(text.substr(0, slash));
        Rat d = parse(text.substr(slash + 1));
        return n / d;
    }
    bool neg = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
    __int128 ip = 0, fp = 0, fden = 1;
    bool any = false, dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (dot) throw std::invalid_argument("Rat::parse: bad number: " + text);
            dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("Rat::parse: bad number: " + text);
        any = true;
        if (!dot) {
            ip = ip * 10 + (c - '0');
            if (ip > (__int128)kMax) throw std::overflow_error("Rat::parse: overflow");
        } else {
            fp = fp * 10 + (c - '0');
            fden *= 10;
            if (fden > (__int128)kMax) throw std::overflow_error("Rat::parse: too many digits");
        }
    }
    if (!any) throw std::invalid_argument("Rat::parse: bad number: " + text);
    __int128 num = ip * fden + fp;
    if (neg) num = -num;
    return from_i128(num, fden);
}

std::int64_t Rat::ipow(std::int64_t base, int exp) {
    if (exp < 0) throw std::invalid_argument("Rat::ipow: negative exponent");
    __int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > (__int128)kMax) throw std::overflow_error("Rat::ipow: overflow");
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace mmgeo
