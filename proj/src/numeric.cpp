/*
   Copyright 2026 The Blobshare Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "blobshare/numeric.hpp"

#include "blobshare/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace blobshare {

namespace {

Uint pow10(int digits) {
    Uint p = 1;
    for (int i = 0; i < digits; ++i) p *= 10;
    return p;
}

//! Half-up (away from zero) rounding of the non-negative fraction num/den.
Uint div_half_up(const Uint& num, const Uint& den) {
    return (2 * num + den) / (2 * den);
}

}  // namespace

Uint round_half_up_scaled(const Rational& value, int digits) {
    const bool neg = value < 0;
    Rational abs = neg ? Rational(-value) : value;
    Uint num = boost::multiprecision::numerator(abs) * pow10(digits);
    Uint den = boost::multiprecision::denominator(abs);
    Uint r = div_half_up(num, den);
    return neg ? Uint(-r) : r;
}

std::string format_fixed(const Rational& value, int digits) {
    Uint scaled = round_half_up_scaled(value, digits);
    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) {
            s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (neg && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "-");
    return s;
}

std::string format_fixed(double value, int digits) {
    // Exact rational conversion of the double keeps rounding consistent with
    // the rational path (IEEE doubles are dyadic rationals).
    return format_fixed(Rational(value), digits);
}

Rational parse_decimal(std::string_view text, int* decimals_out) {
    if (text.empty()) throw_validation("empty decimal");
    std::string_view intpart = text;
    std::string_view fracpart;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        intpart = text.substr(0, dot);
        fracpart = text.substr(dot + 1);
        if (fracpart.empty()) throw_validation("malformed decimal '", std::string(text), "'");
    }
    bool neg = false;
    if (!intpart.empty() && (intpart[0] == '-' || intpart[0] == '+')) {
        neg = intpart[0] == '-';
        intpart.remove_prefix(1);
    }
    if (intpart.empty() && fracpart.empty()) throw_validation("malformed decimal '", std::string(text), "'");
    auto all_digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!all_digits(intpart) || !all_digits(fracpart)) {
        throw_validation("malformed decimal '", std::string(text), "'");
    }
    Uint num = 0;
    for (char c : intpart) num = num * 10 + (c - '0');
    for (char c : fracpart) num = num * 10 + (c - '0');
    Uint den = pow10(static_cast<int>(fracpart.size()));
    if (decimals_out) *decimals_out = static_cast<int>(fracpart.size());
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

std::string format_decimal_exact(const Rational& value, int min_decimals) {
    const bool neg = value < 0;
    Rational abs = neg ? Rational(-value) : value;
    Uint num = boost::multiprecision::numerator(abs);
    Uint den = boost::multiprecision::denominator(abs);
    int decimals = 0;
    // Scale the denominator up to a power of ten; inputs come from decimal text
    // so den is always of the form 2^a * 5^b.
    while (num % den != 0 || decimals < min_decimals) {
        num *= 10;
        ++decimals;
        if (decimals > 64) throw_validation("value is not a finite decimal");
    }
    Uint scaled = num / den;
    std::string s = scaled.str();
    if (decimals > 0) {
        if (static_cast<int>(s.size()) <= decimals) {
            s.insert(0, static_cast<std::size_t>(decimals + 1) - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(decimals), ".");
    }
    if (neg) s.insert(0, "-");
    return s;
}

std::vector<Uint> allocate_prorata(const Uint& total, const std::vector<Uint>& weights) {
    if (total < 0) throw_validation("allocate_prorata: negative total");
    Uint weight_sum = 0;
    for (const Uint& w : weights) {
        if (w < 0) throw_validation("allocate_prorata: negative weight");
        weight_sum += w;
    }
    if (weight_sum == 0) {
        if (total != 0) throw_validation("allocate_prorata: nonzero total with zero weights");
        return std::vector<Uint>(weights.size(), Uint(0));
    }

    std::vector<Uint> shares(weights.size());
    std::vector<Uint> remainders(weights.size());
    Uint assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        Uint num = total * weights[i];
        Uint q = num / weight_sum;
        Uint r = num % weight_sum;
        shares[i] = (2 * r >= weight_sum) ? Uint(q + 1) : q;
        remainders[i] = r;
        assigned += shares[i];
    }

    // Largest-remainder correction: push the rounded sum back onto `total`.
    if (assigned != total) {
        std::vector<std::size_t> order(weights.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (assigned < total) {
            // Bump the rounded-down shares with the largest remainders.
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return remainders[a] > remainders[b];
            });
            Uint missing = total - assigned;
            for (std::size_t i : order) {
                if (missing == 0) break;
                if (remainders[i] > 0 && 2 * remainders[i] < weight_sum) {
                    shares[i] += 1;
                    missing -= 1;
                }
            }
        } else {
            // Trim the rounded-up shares with the smallest remainders.
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return remainders[a] < remainders[b];
            });
            Uint excess = assigned - total;
            for (std::size_t i : order) {
                if (excess == 0) break;
                if (2 * remainders[i] >= weight_sum && shares[i] > 0) {
                    shares[i] -= 1;
                    excess -= 1;
                }
            }
        }
    }
    return shares;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out, 10);
    return ec == std::errc() && ptr == last;
}

bool parse_uint(std::string_view text, Uint& out) {
    if (text.empty()) return false;
    if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return false;
    }
    out = 0;
    for (char c : text) out = out * 10 + (c - '0');
    return true;
}

}  // namespace blobshare
