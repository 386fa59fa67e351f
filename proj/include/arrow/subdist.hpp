#pragma once

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrow/outcome.hpp"
#include "arrow/rational.hpp"

namespace arrow {

/// A finitely supported subdistribution: positive exact weights on outcomes
/// adding up to at most one. Zero weights are never stored, and entries are
/// kept in canonical outcome order.
class Subdistribution {
 public:
  using Entries = std::map<Outcome, Rational>;

  Subdistribution() = default;
  /// Drops zero weights; throws MassOverflow if a weight is negative or the
  /// total exceeds one.
  explicit Subdistribution(Entries entries);
  Subdistribution(std::initializer_list<std::pair<Outcome, Rational>> entries);

  static Subdistribution zero() { return {}; }

  const Entries& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Rational mass() const;
  /// Weight of `x`, zero outside the support.
  Rational weight(const Outcome& x) const;
  std::vector<Outcome> support() const;

  /// Ket rendering, e.g. `1/3|M> + 2/3|R>`; the zero subdistribution is `0`.
  std::string ket() const;

  friend bool operator==(const Subdistribution&, const Subdistribution&) = default;

 private:
  Entries entries_;
};

std::ostream& operator<<(std::ostream& os, const Subdistribution& d);

/// Accumulates weighted monomials, then checks the mass bound once.
class SubdistributionBuilder {
 public:
  void add(const Outcome& x, const Rational& w);
  void add(const Subdistribution& d, const Rational& scale = Rational(1));
  Subdistribution build() &&;

 private:
  Subdistribution::Entries entries_;
};

Subdistribution dirac(const Outcome& x);
Subdistribution uniform(std::span<const Outcome> xs);
Subdistribution uniform(std::initializer_list<Outcome> xs);
Subdistribution tensor(const Subdistribution& sigma, const Subdistribution& rho);
Subdistribution restrict(const Subdistribution& sigma, const std::function<bool(const Outcome&)>& keep);
Subdistribution scale(const Rational& r, const Subdistribution& sigma);
/// Entrywise sum; the result must still have mass at most one.
Subdistribution add(const Subdistribution& a, const Subdistribution& b);

struct Rescaled {
  Rational validity;
  Subdistribution posterior;
};

/// `nullopt` is the failure branch: the input was the zero subdistribution.
std::optional<Rescaled> rescale(const Subdistribution& sigma);

/// Sum of weight * value over integer outcomes. Throws NonNumericOutcome
/// otherwise.
Rational expected_value(const Subdistribution& d);

/// A substochastic kernel tabulated over a finite domain.
class Channel {
 public:
  using Table = std::map<Outcome, Subdistribution>;

  Channel() = default;
  explicit Channel(Table table) : table_(std::move(table)) {}

  /// Throws DomainError when `x` is outside the domain.
  const Subdistribution& operator()(const Outcome& x) const;
  bool defined_at(const Outcome& x) const { return table_.contains(x); }
  const Table& table() const { return table_; }
  std::vector<Outcome> domain() const;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  Table table_;
};

/// Kleisli extension of any function into subdistributions.
Subdistribution kleisli_extend(const std::function<Subdistribution(const Outcome&)>& f,
                               const Subdistribution& sigma);
Subdistribution kleisli_extend(const Channel& f, const Subdistribution& sigma);

/// Kleisli composition `f` then `g`, tabulated over the domain of `f`.
Channel kleisli_compose(const Channel& f, const Channel& g);

/// Per-input rescaling; inputs where `f` has zero mass map to zero.
Channel normalize_channel(const Channel& f);

}  // namespace arrow
