#include "arrow/outcome.hpp"

#include <algorithm>
#include <ostream>

namespace arrow {

Outcome Outcome::symbol(std::string name) {
  Outcome x;
  x.kind_ = Kind::Symbol;
  x.symbol_ = std::move(name);
  return x;
}

Outcome Outcome::integer(std::int64_t value, bool dollar) {
  Outcome x;
  x.kind_ = Kind::Integer;
  x.integer_ = value;
  x.dollar_ = dollar;
  return x;
}

Outcome Outcome::tuple(std::vector<Outcome> items) {
  if (items.size() == 1) return std::move(items.front());
  Outcome x;
  x.kind_ = Kind::Tuple;
  x.items_ = std::move(items);
  return x;
}

Outcome Outcome::set(std::vector<Outcome> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Outcome x;
  x.kind_ = Kind::Set;
  x.items_ = std::move(items);
  return x;
}

std::vector<Outcome> Outcome::components() const {
  if (is_tuple()) return items_;
  return {*this};
}

bool Outcome::contains(const Outcome& element) const {
  return is_set() && std::binary_search(items_.begin(), items_.end(), element);
}

std::strong_ordering operator<=>(const Outcome& a, const Outcome& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Outcome::Kind::Symbol:
      return a.symbol_.compare(b.symbol_) <=> 0;
    case Outcome::Kind::Integer:
      if (a.integer_ != b.integer_) return a.integer_ <=> b.integer_;
      return a.dollar_ <=> b.dollar_;
    case Outcome::Kind::Tuple:
    case Outcome::Kind::Set:
      return std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                                    b.items_.end());
  }
  return std::strong_ordering::equal;
}

void Outcome::render(std::string& out, bool top) const {
  switch (kind_) {
    case Kind::Symbol:
      out += symbol_;
      break;
    case Kind::Integer:
      if (dollar_) out += '$';
      out += std::to_string(integer_);
      break;
    case Kind::Tuple:
      if (!top) out += '(';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        items_[i].render(out, false);
      }
      if (!top) out += ')';
      break;
    case Kind::Set:
      out += '{';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        items_[i].render(out, false);
      }
      out += '}';
      break;
  }
}

std::string Outcome::str() const {
  std::string out;
  render(out, true);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Outcome& x) { return os << x.str(); }

Outcome concat(const Outcome& a, const Outcome& b) {
  std::vector<Outcome> items = a.components();
  for (auto& y : b.components()) items.push_back(std::move(y));
  return Outcome::tuple(std::move(items));
}

}  // namespace arrow
