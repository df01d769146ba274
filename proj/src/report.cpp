#include "chromoid/report.hpp"

namespace chromoid {

std::vector<std::string> ValidationReport::violated_laws() const {
  std::vector<std::string> laws;
  laws.reserve(per_law_.size());
  for (const auto &[law, count] : per_law_)
    laws.push_back(law);
  return laws;
}

void ValidationReport::add(Witness w) {
  ++violations_;
  auto &count = per_law_[w.law];
  if (count++ < kMaxWitnessesPerLaw)
    witnesses_.push_back(std::move(w));
}

void ValidationReport::add(std::string law, std::vector<std::string> items,
                           std::string message) {
  add(Witness{std::move(law), std::move(items), std::move(message)});
}

void ValidationReport::merge(const ValidationReport &other) {
  for (const auto &[law, count] : other.per_law_)
    per_law_[law] += count;
  violations_ += other.violations_;
  witnesses_.insert(witnesses_.end(), other.witnesses_.begin(),
                    other.witnesses_.end());
}

} // namespace chromoid
