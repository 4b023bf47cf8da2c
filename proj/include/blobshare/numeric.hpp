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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace blobshare {

//! Arbitrary-precision integer for wei and blob-gas amounts. Blob base fees
//! grow exponentially in excess blob gas, so no fixed width is safe.
using Uint = boost::multiprecision::cpp_int;
using Wei = Uint;
using Rational = boost::multiprecision::cpp_rational;

//! Round |value| * 10^digits half away from zero to an integer (sign kept).
Uint round_half_up_scaled(const Rational& value, int digits);

//! Fixed-point decimal rendering with half-up rounding, e.g. (98.8359, 2) -> "98.84".
std::string format_fixed(const Rational& value, int digits);
std::string format_fixed(double value, int digits);

//! Parse a base-10 decimal such as "2000.37" into an exact rational.
//! Returns the number of fractional digits seen via `decimals_out` when non-null.
Rational parse_decimal(std::string_view text, int* decimals_out = nullptr);

//! Serialize a rational whose denominator divides a power of ten back to a
//! plain decimal with at least `min_decimals` fractional digits.
std::string format_decimal_exact(const Rational& value, int min_decimals);

//! Split `total` across `weights` proportionally, rounding each share half-up
//! and then applying a largest-remainder correction so the shares sum to
//! `total` exactly. Zero-weight positions receive zero. Deterministic: ties
//! break toward the lower index.
std::vector<Uint> allocate_prorata(const Uint& total, const std::vector<Uint>& weights);

//! Strict base-10 unsigned parse, error message friendly (no sign, no spaces).
bool parse_u64(std::string_view text, std::uint64_t& out);
bool parse_uint(std::string_view text, Uint& out);

}  // namespace blobshare
