#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace arrow {

/// A value a random variable can take: a symbol (`L`, `H`), an integer
/// (optionally displayed with a `$` prefix), a tuple, or a finite set.
///
/// Tuples of length one are never built: `Outcome::tuple({x})` is `x`. This
/// keeps joint states flat, so `sigma (x) dirac(())` is `sigma` again.
class Outcome {
 public:
  enum class Kind { Symbol, Integer, Tuple, Set };

  /// The empty tuple.
  Outcome() : kind_(Kind::Tuple) {}

  static Outcome symbol(std::string name);
  static Outcome integer(std::int64_t value, bool dollar = false);
  static Outcome tuple(std::vector<Outcome> items);
  static Outcome set(std::vector<Outcome> items);  // sorted and deduplicated
  static Outcome unit() { return Outcome(); }

  Kind kind() const { return kind_; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  bool is_set() const { return kind_ == Kind::Set; }

  const std::string& name() const { return symbol_; }
  std::int64_t value() const { return integer_; }
  bool dollar() const { return dollar_; }
  const std::vector<Outcome>& items() const { return items_; }

  /// Tuple components; a non-tuple is its own single component.
  std::vector<Outcome> components() const;

  /// Set membership. Only meaningful on sets.
  bool contains(const Outcome& element) const;

  /// Rendering used inside kets: tuple components separated by `,`
  /// without parentheses at the top level.
  std::string str() const;

  friend bool operator==(const Outcome& a, const Outcome& b) = default;
  friend std::strong_ordering operator<=>(const Outcome& a, const Outcome& b);

 private:
  Kind kind_;
  std::string symbol_;
  std::int64_t integer_ = 0;
  bool dollar_ = false;
  std::vector<Outcome> items_;

  void render(std::string& out, bool top) const;
};

std::ostream& operator<<(std::ostream& os, const Outcome& x);

/// Concatenates the components of `a` and `b` (the flattening used by tensor).
Outcome concat(const Outcome& a, const Outcome& b);

}  // namespace arrow
