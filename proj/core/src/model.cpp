#include "drifter/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

#include <json.hpp>

namespace drifter {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a_byte(std::uint64_t h, unsigned char b) noexcept {
  h ^= b;
  h *= kFnvPrime;
  return h;
}

inline std::uint64_t fmix64(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdull;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ull;
  k ^= k >> 33;
  return k;
}

bool is_space(char c) noexcept {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

FeatureValue FeatureValue::numeric(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("numeric feature value must be finite");
  }
  return FeatureValue(value);
}

std::string render_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string FeatureValue::render() const {
  if (is_categorical()) {
    return token();
  }
  return render_double(number());
}

const FeatureValue* Record::find(std::string_view name) const {
  auto it = std::lower_bound(
      features.begin(), features.end(), name,
      [](const auto& entry, std::string_view n) { return entry.first < n; });
  if (it != features.end() && it->first == name) {
    return &it->second;
  }
  return nullptr;
}

void Record::set(std::string name, FeatureValue value) {
  auto it = std::lower_bound(
      features.begin(), features.end(), name,
      [](const auto& entry, const std::string& n) { return entry.first < n; });
  if (it != features.end() && it->first == name) {
    it->second = std::move(value);
    return;
  }
  features.insert(it, {std::move(name), std::move(value)});
}

std::string Record::debug_string() const {
  nlohmann::ordered_json j;
  j["ts"] = timestamp;
  if (label) {
    j["label"] = static_cast<int>(*label);
  }
  nlohmann::ordered_json feats = nlohmann::ordered_json::object();
  for (const auto& [name, value] : features) {
    if (value.is_categorical()) {
      feats[name] = value.token();
    } else {
      feats[name] = value.number();
    }
  }
  j["features"] = std::move(feats);
  return j.dump();
}

Record Record::from_debug_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Record r;
  r.timestamp = j.at("ts").get<TimestampMs>();
  if (j.contains("label")) {
    int label = j.at("label").get<int>();
    if (label != 0 && label != 1) {
      throw std::invalid_argument("record label must be 0 or 1");
    }
    r.label = static_cast<std::uint8_t>(label);
  }
  for (const auto& [name, value] : j.at("features").items()) {
    if (value.is_string()) {
      r.set(name, FeatureValue::categorical(value.get<std::string>()));
    } else if (value.is_number()) {
      r.set(name, FeatureValue::numeric(value.get<double>()));
    } else {
      throw std::invalid_argument("feature value must be string or number");
    }
  }
  return r;
}

std::uint64_t stable_hash64(std::string_view bytes, std::uint64_t seed) noexcept {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h = fnv1a_byte(h, static_cast<unsigned char>(seed >> (8 * i)));
  }
  for (unsigned char b : bytes) {
    h = fnv1a_byte(h, b);
  }
  return fmix64(h);
}

HashedValue hash_feature(std::string_view name, const FeatureValue& value,
                         std::uint64_t bucket_count, std::uint64_t seed) {
  if (bucket_count < 2) {
    throw std::invalid_argument("bucket_count must be >= 2");
  }
  std::string payload;
  std::string rendered = value.render();
  payload.reserve(name.size() + 1 + rendered.size());
  payload.append(name);
  payload.push_back('\x1f');
  payload.append(rendered);
  return HashedValue{stable_hash64(payload, seed) % bucket_count};
}

std::string parse_feature_name(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && is_space(raw[begin])) {
    ++begin;
  }
  while (end > begin && is_space(raw[end - 1])) {
    --end;
  }
  if (begin == end) {
    throw ParseError("empty feature name", 0);
  }
  for (std::size_t i = begin; i < end; ++i) {
    if (is_space(raw[i])) {
      throw ParseError("feature name contains whitespace", i);
    }
  }
  return std::string(raw.substr(begin, end - begin));
}

}  // namespace drifter
