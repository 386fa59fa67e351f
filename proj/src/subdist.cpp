#include "arrow/subdist.hpp"

#include <ostream>

#include "arrow/error.hpp"

namespace arrow {

namespace {

void check_mass(const Subdistribution::Entries& entries) {
  Rational total;
  for (const auto& [x, w] : entries) {
    if (w.sign() < 0) throw Error(ErrorCode::MassOverflow, "negative weight on " + x.str());
    total += w;
  }
  if (total > Rational(1)) throw Error(ErrorCode::MassOverflow, "total mass " + total.str() + " exceeds 1");
}

}  // namespace

Subdistribution::Subdistribution(Entries entries) : entries_(std::move(entries)) {
  std::erase_if(entries_, [](const auto& e) { return e.second.is_zero(); });
  check_mass(entries_);
}

Subdistribution::Subdistribution(std::initializer_list<std::pair<Outcome, Rational>> entries) {
  SubdistributionBuilder b;
  for (const auto& [x, w] : entries) b.add(x, w);
  *this = std::move(b).build();
}

Rational Subdistribution::mass() const {
  Rational total;
  for (const auto& [x, w] : entries_) total += w;
  return total;
}

Rational Subdistribution::weight(const Outcome& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? Rational() : it->second;
}

std::vector<Outcome> Subdistribution::support() const {
  std::vector<Outcome> xs;
  xs.reserve(entries_.size());
  for (const auto& [x, w] : entries_) xs.push_back(x);
  return xs;
}

std::string Subdistribution::ket() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [x, w] : entries_) {
    if (!out.empty()) out += " + ";
    out += w.str();
    out += '|';
    out += x.str();
    out += '>';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Subdistribution& d) { return os << d.ket(); }

void SubdistributionBuilder::add(const Outcome& x, const Rational& w) {
  if (w.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace(x, w);
  if (!inserted) it->second += w;
}

void SubdistributionBuilder::add(const Subdistribution& d, const Rational& scale) {
  for (const auto& [x, w] : d) add(x, scale * w);
}

Subdistribution SubdistributionBuilder::build() && { return Subdistribution(std::move(entries_)); }

Subdistribution dirac(const Outcome& x) { return Subdistribution({{x, Rational(1)}}); }

Subdistribution uniform(std::span<const Outcome> xs) {
  if (xs.empty()) throw Error(ErrorCode::EmptySupport, "uniform over an empty set");
  Subdistribution::Entries entries;
  const Rational w(1, static_cast<std::int64_t>(xs.size()));
  for (const auto& x : xs) {
    if (!entries.emplace(x, w).second) {
      throw Error(ErrorCode::EmptySupport, "uniform over a list with repeated element " + x.str());
    }
  }
  return Subdistribution(std::move(entries));
}

Subdistribution uniform(std::initializer_list<Outcome> xs) {
  return uniform(std::span<const Outcome>(xs.begin(), xs.size()));
}

Subdistribution tensor(const Subdistribution& sigma, const Subdistribution& rho) {
  SubdistributionBuilder b;
  for (const auto& [x, v] : sigma) {
    for (const auto& [y, w] : rho) b.add(concat(x, y), v * w);
  }
  return std::move(b).build();
}

Subdistribution restrict(const Subdistribution& sigma, const std::function<bool(const Outcome&)>& keep) {
  Subdistribution::Entries entries;
  for (const auto& [x, w] : sigma) {
    if (keep(x)) entries.emplace(x, w);
  }
  return Subdistribution(std::move(entries));
}

Subdistribution scale(const Rational& r, const Subdistribution& sigma) {
  SubdistributionBuilder b;
  b.add(sigma, r);
  return std::move(b).build();
}

Subdistribution add(const Subdistribution& a, const Subdistribution& b) {
  SubdistributionBuilder out;
  out.add(a);
  out.add(b);
  return std::move(out).build();
}

std::optional<Rescaled> rescale(const Subdistribution& sigma) {
  const Rational v = sigma.mass();
  if (v.is_zero()) return std::nullopt;
  Subdistribution::Entries entries;
  for (const auto& [x, w] : sigma) entries.emplace(x, w / v);
  return Rescaled{v, Subdistribution(std::move(entries))};
}

Rational expected_value(const Subdistribution& d) {
  Rational total;
  for (const auto& [x, w] : d) {
    if (!x.is_integer()) throw Error(ErrorCode::NonNumericOutcome, "outcome " + x.str() + " is not an integer");
    total += w * Rational(x.value());
  }
  return total;
}

const Subdistribution& Channel::operator()(const Outcome& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) throw Error(ErrorCode::DomainError, "channel undefined at " + x.str());
  return it->second;
}

std::vector<Outcome> Channel::domain() const {
  std::vector<Outcome> xs;
  for (const auto& [x, d] : table_) xs.push_back(x);
  return xs;
}

Subdistribution kleisli_extend(const std::function<Subdistribution(const Outcome&)>& f,
                               const Subdistribution& sigma) {
  SubdistributionBuilder b;
  for (const auto& [x, r] : sigma) b.add(f(x), r);
  return std::move(b).build();
}

Subdistribution kleisli_extend(const Channel& f, const Subdistribution& sigma) {
  return kleisli_extend([&f](const Outcome& x) -> Subdistribution { return f(x); }, sigma);
}

Channel kleisli_compose(const Channel& f, const Channel& g) {
  Channel::Table table;
  for (const auto& [x, d] : f.table()) table.emplace(x, kleisli_extend(g, d));
  return Channel(std::move(table));
}

Channel normalize_channel(const Channel& f) {
  Channel::Table table;
  for (const auto& [x, d] : f.table()) {
    auto r = rescale(d);
    table.emplace(x, r ? std::move(r->posterior) : Subdistribution::zero());
  }
  return Channel(std::move(table));
}

}  // namespace arrow
