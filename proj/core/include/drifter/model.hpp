#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace drifter {

using TimestampMs = std::int64_t;

/// Raised when text input cannot be turned into a domain value. Carries the
/// byte offset of the offending position within the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// One observed feature value: either a categorical token or a finite
/// 64-bit float. Missingness is encoded by absence of the feature in a
/// Record, never by a value.
class FeatureValue {
 public:
  static FeatureValue categorical(std::string token) {
    return FeatureValue(std::move(token));
  }

  /// Throws std::invalid_argument for NaN or +/-inf; non-finite numerics
  /// never make it past ingestion.
  static FeatureValue numeric(double value);

  bool is_categorical() const noexcept {
    return std::holds_alternative<std::string>(value_);
  }
  bool is_numeric() const noexcept {
    return std::holds_alternative<double>(value_);
  }

  const std::string& token() const { return std::get<std::string>(value_); }
  double number() const { return std::get<double>(value_); }

  /// Canonical byte rendering used for hashing and cardinality counting:
  /// the token verbatim for categoricals, the shortest round-trippable
  /// decimal for numerics (so the inputs "1.0" and "1" render identically).
  std::string render() const;

  bool operator==(const FeatureValue& other) const = default;

 private:
  explicit FeatureValue(std::string token) : value_(std::move(token)) {}
  explicit FeatureValue(double value) : value_(value) {}

  std::variant<std::string, double> value_;
};

/// Shortest decimal rendering of a finite double that parses back to the
/// exact same bits.
std::string render_double(double value);

/// One sparse observation. `features` is kept sorted by name with unique
/// keys, which makes iteration order deterministic.
struct Record {
  std::vector<std::pair<std::string, FeatureValue>> features;
  std::optional<std::uint8_t> label;  // binary {0,1}
  TimestampMs timestamp = 0;

  const FeatureValue* find(std::string_view name) const;

  /// Inserts or replaces, preserving sort order.
  void set(std::string name, FeatureValue value);

  /// Single-line lossless debug form; `from_debug_string` inverts it.
  std::string debug_string() const;
  static Record from_debug_string(const std::string& text);

  bool operator==(const Record& other) const = default;
};

/// A bounded run of consecutive records sharing one window.
struct MiniBatch {
  std::vector<Record> records;
  std::uint64_t window_id = 0;
  TimestampMs window_start = 0;
  TimestampMs window_end = 0;  // exclusive
};

struct HashedValue {
  std::uint64_t bucket = 0;
};

/// Stable, seedable 64-bit hash: FNV-1a accumulation (seed absorbed first)
/// with a murmur-style finalizer for avalanche in the high bits. No
/// process-randomized state; identical across runs and platforms.
std::uint64_t stable_hash64(std::string_view bytes, std::uint64_t seed) noexcept;

/// The hashing trick: clips (name, value) to a bucket in [0, bucket_count).
/// Deterministic for fixed inputs. Throws std::invalid_argument when
/// bucket_count < 2.
HashedValue hash_feature(std::string_view name, const FeatureValue& value,
                         std::uint64_t bucket_count, std::uint64_t seed);

/// Trims surrounding whitespace and validates: non-empty, no interior
/// whitespace. Namespace-qualified names ("ns^feat") pass through verbatim.
/// Throws ParseError with the byte offset of the violation.
std::string parse_feature_name(std::string_view raw);

}  // namespace drifter
