// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KBEQ_FIELD_HPP
#define KBEQ_FIELD_HPP

#include <concepts>
#include <type_traits>

#include "kbeq/eps.hpp"
#include "kbeq/rational.hpp"

namespace kbeq {

/// An exact ordered field usable for probabilities and expected utilities.
template <class F>
concept OrderedField = std::regular<F> && std::totally_ordered<F> &&
    std::constructible_from<F, Rational> && requires(const F& a, const F& b) {
      { a + b } -> std::convertible_to<F>;
      { a - b } -> std::convertible_to<F>;
      { a * b } -> std::convertible_to<F>;
      { a / b } -> std::convertible_to<F>;
      { -a } -> std::convertible_to<F>;
      { a.sign() } -> std::convertible_to<int>;
      { a.is_zero() } -> std::convertible_to<bool>;
      { standard_part(a) } -> std::convertible_to<Rational>;
    };

template <class F>
inline constexpr bool is_nonstandard_v = std::is_same_v<F, EpsNum>;

inline EpsNum to_eps(const Rational& r) { return EpsNum(r); }
inline EpsNum to_eps(const EpsNum& e) { return e; }

}  // namespace kbeq

#endif  // KBEQ_FIELD_HPP
