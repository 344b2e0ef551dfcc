#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdeg/bitstring.hpp"

namespace qdeg {

enum class Family { Or, And, Parity, Majority, Threshold };

/// A named family together with its parameter (only THRESHOLD uses tau).
struct FamilySpec {
  Family family = Family::Or;
  int tau = 0;

  /// Accepts "or", "and", "parity", "majority", "threshold2", "threshold:2".
  static FamilySpec parse(std::string_view text);
  std::string name() const;

  bool operator==(const FamilySpec&) const = default;
};

/// Boolean function on n bits whose value depends only on the Hamming weight.
class SymmetricFunction {
 public:
  /// spectrum[k] is the value on inputs of weight k; n = spectrum.size() - 1.
  explicit SymmetricFunction(std::vector<std::uint8_t> spectrum);

  int arity() const { return static_cast<int>(spectrum_.size()) - 1; }
  std::span<const std::uint8_t> spectrum() const { return spectrum_; }
  int at_weight(int k) const;
  int operator()(const BitString& x) const;

  bool is_constant() const;
  SymmetricFunction negated() const;
  /// f(not x): spectrum read back to front.
  SymmetricFunction reflected() const;

  /// "n= <n>" line followed by the n+1 spectrum bits.
  std::string to_text() const;
  static SymmetricFunction parse_text(std::string_view text);

  bool operator==(const SymmetricFunction&) const = default;

 private:
  std::vector<std::uint8_t> spectrum_;
};

SymmetricFunction make_named(const FamilySpec& family, int n);

/// Smallest t > 0 such that f is constant on weights {t, ..., n-t}; an empty
/// range counts as constant. Throws DomainError for constant f.
int jump_parameter(const SymmetricFunction& f);

/// Partial assignment of the n input bits (1-based indices).
struct Restriction {
  std::vector<int> ones;
  std::vector<int> zeros;
  std::vector<int> free;  // order defines the restricted function's inputs

  void validate(int n) const;
  /// Builds the full n-bit input from an assignment y to the free bits.
  BitString assemble(const BitString& y, int n) const;
};

SymmetricFunction restrict(const SymmetricFunction& f, const Restriction& r);

enum class Polarity { Identity, Negated, Reflected, ReflectedNegated };

std::string to_string(Polarity p);

/// restrict(f, restriction) equals OR_m up to the recorded polarity:
///   Identity          g(y)  = OR(y)
///   Negated           g(y)  = 1 - OR(y)
///   Reflected         g(~y) = OR(y)
///   ReflectedNegated  g(~y) = 1 - OR(y)
struct OrEmbedding {
  int m = 0;
  Restriction restriction;
  Polarity polarity = Polarity::Identity;
};

/// Embeds the largest OR available next to an outermost weight jump.
/// Requires jump_parameter(f) < n/4; throws NotApplicableError otherwise.
OrEmbedding embed_or(const SymmetricFunction& f);

/// Checks the polarity relation of `e` against OR_m at every weight.
bool embedding_holds(const SymmetricFunction& f, const OrEmbedding& e);

}  // namespace qdeg
