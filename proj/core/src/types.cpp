#include "thetasum/types.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "thetasum/errors.hpp"

namespace thetasum {

namespace {

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

void require_valid(const SumSpec& spec, bool allow_zero_w) {
  if (!std::isfinite(spec.a.real()) || !std::isfinite(spec.a.imag()) || !(spec.a.real() > 0.0)) {
    throw DomainError("precondition failed: Re(a) > 0");
  }
  if (!std::isfinite(spec.w)) throw DomainError("precondition failed: w finite");
  if (allow_zero_w ? spec.w < 0.0 : !(spec.w > 0.0)) {
    throw DomainError(allow_zero_w ? "precondition failed: w >= 0" : "precondition failed: w > 0");
  }
}

void require_valid(const TruncationPolicy& policy) {
  if (const auto* fixed = std::get_if<policy::Fixed>(&policy)) {
    if (fixed->count < 1) throw DomainError("precondition failed: fixed truncation count >= 1");
  } else if (const auto* target = std::get_if<policy::ErrorTarget>(&policy)) {
    if (!(target->eps > 0.0)) throw DomainError("precondition failed: error target eps > 0");
    if (target->cap < 1) throw DomainError("precondition failed: error target cap >= 1");
  }
}

TruncationPolicy parse_policy(std::string_view text) {
  if (text == "optimal") return policy::OptimalFirstMin{};
  if (text.starts_with("fixed:")) {
    const auto count = parse_number<int>(text.substr(6));
    if (!count) throw DomainError("invalid policy '" + std::string(text) + "'");
    TruncationPolicy p = policy::Fixed{*count};
    require_valid(p);
    return p;
  }
  if (text.starts_with("target:")) {
    auto rest = text.substr(7);
    const auto colon = rest.find(':');
    const auto eps = parse_number<double>(rest.substr(0, colon));
    std::optional<int> cap = 2000;
    if (colon != std::string_view::npos) cap = parse_number<int>(rest.substr(colon + 1));
    if (!eps || !cap) throw DomainError("invalid policy '" + std::string(text) + "'");
    TruncationPolicy p = policy::ErrorTarget{*eps, *cap};
    require_valid(p);
    return p;
  }
  throw DomainError("invalid policy '" + std::string(text) + "' (expected optimal, fixed:N or target:EPS[:CAP])");
}

std::string to_string(const TruncationPolicy& policy) {
  if (const auto* fixed = std::get_if<policy::Fixed>(&policy)) return "fixed:" + std::to_string(fixed->count);
  if (const auto* target = std::get_if<policy::ErrorTarget>(&policy)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "target:%g:%d", target->eps, target->cap);
    return buf;
  }
  return "optimal";
}

std::string_view to_string(MethodChoice method) {
  switch (method) {
    case MethodChoice::Direct: return "direct";
    case MethodChoice::Generic: return "generic";
    case MethodChoice::EvenTransform: return "even";
    case MethodChoice::ClassicalPJ: return "classical";
  }
  return "unknown";
}

std::optional<MethodChoice> parse_method(std::string_view text) {
  if (text == "direct") return MethodChoice::Direct;
  if (text == "generic") return MethodChoice::Generic;
  if (text == "even") return MethodChoice::EvenTransform;
  if (text == "classical") return MethodChoice::ClassicalPJ;
  return std::nullopt;
}

void TermLog::append(std::string series, int index, double magnitude) {
  if (!(magnitude >= 0.0)) throw std::logic_error("TermLog: magnitude must be non-negative");
  auto it = last_index_.find(series);
  if (it != last_index_.end()) {
    if (index <= it->second) throw std::logic_error("TermLog: indices must increase within " + series);
    it->second = index;
  } else {
    last_index_.emplace(series, index);
  }
  entries_.push_back({std::move(series), index, magnitude});
}

std::vector<std::pair<int, double>> TermLog::series(std::string_view name) const {
  std::vector<std::pair<int, double>> out;
  for (const auto& e : entries_) {
    if (e.series == name) out.emplace_back(e.index, e.magnitude);
  }
  return out;
}

Limits parse_limits(std::string_view text) {
  Limits limits;
  if (auto all = parse_number<int>(text)) {
    if (*all < 1) throw DomainError("THETA_SUM_MAX_TERMS must be >= 1");
    return {*all, *all, *all};
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("malformed THETA_SUM_MAX_TERMS entry '" + std::string(item) + "'");
    const auto key = item.substr(0, eq);
    const auto value = parse_number<int>(item.substr(eq + 1));
    if (!value || *value < 1) throw DomainError("malformed THETA_SUM_MAX_TERMS entry '" + std::string(item) + "'");
    if (key == "k") limits.max_k = *value;
    else if (key == "j") limits.max_j = *value;
    else if (key == "n") limits.max_n = *value;
    else throw DomainError("unknown THETA_SUM_MAX_TERMS key '" + std::string(key) + "'");
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return limits;
}

Limits limits_from_env() {
  const char* raw = std::getenv("THETA_SUM_MAX_TERMS");
  if (raw == nullptr || *raw == '\0') return {};
  return parse_limits(raw);
}

}  // namespace thetasum
