#include "coulomb/series.hpp"

#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

GradedSeries::GradedSeries(HalfInteger truncation, std::size_t fugacity_count)
    : truncation_(truncation), fugacity_count_(fugacity_count) {}

GradedSeries GradedSeries::one(HalfInteger truncation, std::size_t fugacity_count) {
  GradedSeries s(truncation, fugacity_count);
  s.add_term(0, std::vector<std::int64_t>(fugacity_count, 0), 1);
  return s;
}

GradedSeries GradedSeries::geometric(HalfInteger truncation, std::int64_t half_units) {
  if (half_units <= 0) throw std::invalid_argument("geometric: exponent must be positive");
  GradedSeries s(truncation, 0);
  for (std::int64_t e = 0; e <= truncation.half_units(); e += half_units) s.add_term(e, {}, 1);
  return s;
}

void GradedSeries::add_term(std::int64_t half_units, const std::vector<std::int64_t>& fugacity, const Rational& c) {
  if (fugacity.size() != fugacity_count_) throw DimensionError("series term has the wrong number of fugacities");
  if (half_units > truncation_.half_units() || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{half_units, fugacity}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational GradedSeries::coefficient(std::int64_t half_units, const std::vector<std::int64_t>& fugacity) const {
  auto it = terms_.find(Key{half_units, fugacity});
  return it == terms_.end() ? Rational(0) : it->second;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& other) {
  if (other.fugacity_count_ != fugacity_count_) throw DimensionError("adding series with different fugacities");
  if (other.truncation_ < truncation_) {
    truncation_ = other.truncation_;
    std::erase_if(terms_, [&](const auto& kv) { return kv.first.half_units > truncation_.half_units(); });
  }
  for (const auto& [k, c] : other.terms_) add_term(k.half_units, k.fugacity, c);
  return *this;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  if (a.fugacity_count_ != b.fugacity_count_) throw DimensionError("multiplying series with different fugacities");
  GradedSeries out(std::min(a.truncation_, b.truncation_), a.fugacity_count_);
  const std::int64_t top = out.truncation_.half_units();
  std::vector<std::int64_t> f(a.fugacity_count_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      // Terms are sorted by exponent, so the rest of b is too high as well.
      if (ka.half_units + kb.half_units > top) break;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = ka.fugacity[i] + kb.fugacity[i];
      out.add_term(ka.half_units + kb.half_units, f, ca * cb);
    }
  return out;
}

GradedSeries GradedSeries::pow(unsigned exponent) const {
  GradedSeries out = one(truncation_, fugacity_count_);
  for (unsigned i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

GradedSeries GradedSeries::shifted(std::int64_t half_units, const std::vector<std::int64_t>& fugacity) const {
  GradedSeries out(truncation_, fugacity_count_);
  std::vector<std::int64_t> f(fugacity_count_);
  for (const auto& [k, c] : terms_) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = k.fugacity[i] + fugacity[i];
    out.add_term(k.half_units + half_units, f, c);
  }
  return out;
}

GradedSeries GradedSeries::truncated(HalfInteger order) const {
  GradedSeries out(std::min(order, truncation_), fugacity_count_);
  for (const auto& [k, c] : terms_) out.add_term(k.half_units, k.fugacity, c);
  return out;
}

GradedSeries GradedSeries::collapse_fugacities() const {
  GradedSeries out(truncation_, 0);
  for (const auto& [k, c] : terms_) out.add_term(k.half_units, {}, c);
  return out;
}

std::vector<Rational> GradedSeries::coefficients() const {
  std::vector<Rational> out(static_cast<std::size_t>(std::max<std::int64_t>(truncation_.half_units() + 1, 0)));
  for (const auto& [k, c] : terms_) {
    if (k.half_units < 0) throw std::logic_error("coefficients: negative exponent");
    out[static_cast<std::size_t>(k.half_units)] += c;
  }
  return out;
}

std::string GradedSeries::to_text() const {
  std::string s;
  for (const auto& [k, c] : terms_) {
    s += "q^(" + std::to_string(k.half_units) + "/2)";
    if (fugacity_count_ > 0) {
      s += " * b^(";
      for (std::size_t i = 0; i < k.fugacity.size(); ++i) s += (i ? "," : "") + std::to_string(k.fugacity[i]);
      s += ")";
    }
    s += ": " + coulomb::to_string(c) + "\n";
  }
  return s;
}

nlohmann::json GradedSeries::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, c] : terms_) {
    nlohmann::json f = nlohmann::json::array();
    for (auto x : k.fugacity) f.push_back(std::to_string(x));
    out.push_back({std::to_string(k.half_units), f, c.get_num().get_str(), c.get_den().get_str()});
  }
  return out;
}

GradedSeries GradedSeries::from_json(const nlohmann::json& j, HalfInteger truncation, std::size_t fugacity_count) {
  GradedSeries s(truncation, fugacity_count);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 4) throw std::invalid_argument("series term must have four entries");
    std::vector<std::int64_t> f;
    for (const auto& x : term[1]) f.push_back(std::stoll(x.get<std::string>()));
    Rational c(Integer(term[2].get<std::string>()), Integer(term[3].get<std::string>()));
    c.canonicalize();
    s.add_term(std::stoll(term[0].get<std::string>()), f, c);
  }
  return s;
}

}  // namespace coulomb
