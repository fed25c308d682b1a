#pragma once

// Encoding into a union of cosets and supercode (coset-by-coset) decoding.

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ermcode/codes.hpp"
#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"

namespace ermcode {

/// Message bits, least significant first. For a coset code the low s bits
/// select the base codeword and the high t bits select the coset.
class MessageBits {
 public:
  MessageBits() = default;
  explicit MessageBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_)
      if (b > 1) throw ParameterError("message bits must be 0 or 1");
  }

  static MessageBits from_value(std::uint64_t value, std::size_t length) {
    if (length < 64 && (value >> length) != 0)
      throw ParameterError("value does not fit in " + std::to_string(length) + " bits");
    std::vector<std::uint8_t> bits(length, 0);
    for (std::size_t i = 0; i < length && i < 64; ++i) bits[i] = static_cast<std::uint8_t>((value >> i) & 1U);
    return MessageBits(std::move(bits));
  }

  /// Big-endian hex string; an optional 0x prefix is accepted.
  static MessageBits from_hex(std::string_view hex, std::size_t length) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw ParameterError("empty hex message");
    std::vector<std::uint8_t> bits(length, 0);
    std::size_t pos = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, pos += 4) {
      const char c = *it;
      int v;
      if (c >= '0' && c <= '9')
        v = c - '0';
      else if (c >= 'a' && c <= 'f')
        v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F')
        v = c - 'A' + 10;
      else
        throw ParameterError(std::string("invalid hex digit '") + c + "'");
      for (int b = 0; b < 4; ++b) {
        if (((v >> b) & 1) == 0) continue;
        if (pos + b >= length) throw ParameterError("hex message exceeds " + std::to_string(length) + " bits");
        bits[pos + b] = 1;
      }
    }
    return MessageBits(std::move(bits));
  }

  std::string to_hex() const {
    const std::size_t digits = std::max<std::size_t>(1, (bits_.size() + 3) / 4);
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
      int v = 0;
      for (int b = 0; b < 4; ++b)
        if (4 * d + b < bits_.size() && bits_[4 * d + b]) v |= 1 << b;
      out[digits - 1 - d] = "0123456789abcdef"[v];
    }
    return out;
  }

  std::size_t size() const { return bits_.size(); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::span<const std::uint8_t> slice(std::size_t begin, std::size_t count) const {
    return std::span<const std::uint8_t>(bits_).subspan(begin, count);
  }

  /// Integer value of bits [begin, begin + count), count <= 64.
  std::uint64_t value(std::size_t begin, std::size_t count) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < count; ++i) v |= static_cast<std::uint64_t>(bits_[begin + i]) << i;
    return v;
  }

  bool operator==(const MessageBits&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline ZqWord encode(const CosetCode& code, const MessageBits& message) {
  const auto s = static_cast<std::size_t>(code.s());
  const auto t = static_cast<std::size_t>(code.t);
  if (message.size() != s + t)
    throw ParameterError("code takes " + std::to_string(s + t) + " message bits, got " + std::to_string(message.size()));
  const std::uint64_t selector = message.value(s, t);
  return code.reps[selector] + code.base.encode_bits(message.slice(0, s));
}

inline ZqWord encode(const LinearCode& code, const MessageBits& message) {
  return code.encode_bits(message.bits());
}

/// sum_i |rx_i - xi^{c_i}|^2.
inline double squared_distance(std::span<const Complex> rx, const ZqWord& c) {
  if (rx.size() != c.size()) throw ParameterError("received vector length differs from the code length");
  double d = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) d += std::norm(rx[i] - unit_root(c.modulus(), c[i]));
  return d;
}

struct BaseDecision {
  std::uint64_t message = 0;  ///< base-code message value
  ZqWord word;
  double metric = 0.0;  ///< squared Euclidean distance to the received vector
};

/// Nearest-codeword decoder for a linear base code.
class BaseCodeDecoder {
 public:
  virtual ~BaseCodeDecoder() = default;
  virtual const LinearCode& code() const = 0;
  virtual BaseDecision decode(std::span<const Complex> rx) const = 0;
};

/// Scans the whole base code; ties go to the smallest message value.
class ExhaustiveBaseDecoder final : public BaseCodeDecoder {
 public:
  explicit ExhaustiveBaseDecoder(LinearCode code) : code_(std::move(code)) {
    if (code_.size_bits() > kExhaustiveBudgetBits)
      throw BudgetError("exhaustive decoding over 2^" + std::to_string(code_.size_bits()) + " codewords exceeds 2^" +
                        std::to_string(kExhaustiveBudgetBits));
  }

  const LinearCode& code() const override { return code_; }

  BaseDecision decode(std::span<const Complex> rx) const override {
    const Residue q = code_.modulus();
    const std::size_t n = code_.length();
    if (rx.size() != n) throw ParameterError("received vector length differs from the code length");
    std::vector<double> cost(n * q);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(rx[i].real()) || !std::isfinite(rx[i].imag()))
        throw ParameterError("received vector has a non-finite sample");
      for (Residue v = 0; v < q; ++v) {
        cost[i * q + v] = std::norm(rx[i] - unit_root(q, v));
        worst = std::max(worst, cost[i * q + v]);
      }
    }
    // fixed point with headroom for n terms
    const double scale = std::ldexp(1.0, 46) / std::max(1.0, worst * static_cast<double>(n));
    Accumulator acc(q);
    acc.table.resize(cost.size());
    for (std::size_t j = 0; j < cost.size(); ++j) acc.table[j] = std::llround(cost[j] * scale);

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::uint64_t best_message = 0;
    walk_coset(code_, ZqWord::zeros(q, n), acc, [&](const Accumulator& a, std::uint64_t msg, std::span<const Residue>) {
      if (a.total < best || (a.total == best && msg < best_message)) {
        best = a.total;
        best_message = msg;
      }
    });
    BaseDecision d;
    d.message = best_message;
    d.word = code_.encode_bits(MessageBits::from_value(best_message, static_cast<std::size_t>(code_.size_bits())).bits());
    d.metric = squared_distance(rx, d.word);
    return d;
  }

 private:
  struct Accumulator {
    explicit Accumulator(Residue q) : q(q) {}
    void reset(std::span<const Residue> w) {
      total = 0;
      for (std::size_t i = 0; i < w.size(); ++i) total += table[i * q + w[i]];
    }
    void change(std::uint32_t i, Residue old, Residue now) {
      total += table[std::size_t{i} * q + now] - table[std::size_t{i} * q + old];
    }
    Residue q;
    std::vector<std::int64_t> table;
    std::int64_t total = 0;
  };

  LinearCode code_;
};

struct DecodeResult {
  MessageBits message;
  ZqWord word;
  double metric = 0.0;
  std::size_t coset = 0;
};

inline constexpr double kDecodeTieTolerance = 1e-9;

/// Subtracts each representative in turn (rx * conj(xi^{rep})), decodes in the
/// base code and keeps the closest result. Ties go to the smaller coset index.
inline DecodeResult decode(const CosetCode& code, std::span<const Complex> rx, const BaseCodeDecoder& base) {
  const std::size_t n = code.length();
  if (rx.size() != n)
    throw ParameterError("received vector has length " + std::to_string(rx.size()) + ", code length is " +
                         std::to_string(n));
  const Residue q = code.modulus();
  std::vector<Complex> z(n);
  DecodeResult out;
  bool have = false;
  BaseDecision best;
  for (std::size_t c = 0; c < code.reps.size(); ++c) {
    const ZqWord& rep = code.reps[c];
    for (std::size_t i = 0; i < n; ++i) z[i] = rx[i] * std::conj(unit_root(q, rep[i]));
    BaseDecision d = base.decode(z);
    if (!have || d.metric < best.metric - kDecodeTieTolerance) {
      best = std::move(d);
      out.coset = c;
      have = true;
    }
  }
  const auto s = static_cast<std::size_t>(code.s());
  std::vector<std::uint8_t> bits(s + static_cast<std::size_t>(code.t), 0);
  for (std::size_t i = 0; i < s; ++i) bits[i] = static_cast<std::uint8_t>((best.message >> i) & 1U);
  for (int i = 0; i < code.t; ++i) bits[s + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((out.coset >> i) & 1U);
  out.message = MessageBits(std::move(bits));
  out.word = code.reps[out.coset] + best.word;
  out.metric = squared_distance(rx, out.word);
  return out;
}

inline DecodeResult decode(const CosetCode& code, std::span<const Complex> rx) {
  ExhaustiveBaseDecoder base(code.base);
  return decode(code, rx, base);
}

/// Ideal channel output for a codeword.
inline std::vector<Complex> modulate(const ZqWord& w) {
  std::vector<Complex> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = unit_root(w.modulus(), w[i]);
  return out;
}

}  // namespace ermcode
