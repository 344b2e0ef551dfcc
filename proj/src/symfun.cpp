#include "qdeg/symfun.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "qdeg/errors.hpp"

namespace qdeg {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool constant_on(std::span<const std::uint8_t> spectrum, int lo, int hi) {
  for (int k = lo + 1; k <= hi; ++k) {
    if (spectrum[static_cast<std::size_t>(k)] != spectrum[static_cast<std::size_t>(lo)]) return false;
  }
  return true;
}

struct SideEmbedding {
  int jump = -1;  // weight of the outermost jump, -1 if none on this side
  int m = 0;
  bool negated = false;
};

// Works on the low side of `spec`: largest a < t with spec[a] != c, then the
// longest run of c starting at a+1.
SideEmbedding low_side(std::span<const std::uint8_t> spec, int t, std::uint8_t c) {
  SideEmbedding side;
  const int n = static_cast<int>(spec.size()) - 1;
  for (int a = t - 1; a >= 0; --a) {
    if (spec[static_cast<std::size_t>(a)] != c) {
      side.jump = a;
      break;
    }
  }
  if (side.jump < 0) return side;
  int m = 0;
  while (side.jump + m + 1 <= n && spec[static_cast<std::size_t>(side.jump + m + 1)] == c) ++m;
  side.m = m;
  side.negated = (c == 0);
  return side;
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  const std::string s = lower(text);
  if (s == "or") return {Family::Or, 0};
  if (s == "and") return {Family::And, 0};
  if (s == "parity") return {Family::Parity, 0};
  if (s == "majority") return {Family::Majority, 0};
  constexpr std::string_view prefix = "threshold";
  if (s.rfind(prefix, 0) == 0) {
    std::string_view rest = std::string_view(s).substr(prefix.size());
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '=' || rest.front() == '(')) rest.remove_prefix(1);
    if (!rest.empty() && rest.back() == ')') rest.remove_suffix(1);
    int tau = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), tau);
    if (ec == std::errc() && ptr == rest.data() + rest.size() && !rest.empty()) return {Family::Threshold, tau};
  }
  throw ParameterError("unknown function family '" + std::string(text) + "'");
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::Or: return "or";
    case Family::And: return "and";
    case Family::Parity: return "parity";
    case Family::Majority: return "majority";
    case Family::Threshold: return "threshold" + std::to_string(tau);
  }
  return "?";
}

SymmetricFunction::SymmetricFunction(std::vector<std::uint8_t> spectrum) : spectrum_(std::move(spectrum)) {
  if (spectrum_.size() < 2) throw ParameterError("spectrum needs n+1 >= 2 entries");
  for (auto v : spectrum_) {
    if (v > 1) throw ParameterError("spectrum entries must be 0 or 1");
  }
}

int SymmetricFunction::at_weight(int k) const {
  if (k < 0 || k > arity()) throw ParameterError("weight outside [0, n]");
  return spectrum_[static_cast<std::size_t>(k)];
}

int SymmetricFunction::operator()(const BitString& x) const {
  if (x.size() != arity()) throw ParameterError("input length does not match arity");
  return spectrum_[static_cast<std::size_t>(x.weight())];
}

bool SymmetricFunction::is_constant() const { return constant_on(spectrum_, 0, arity()); }

SymmetricFunction SymmetricFunction::negated() const {
  auto s = spectrum_;
  for (auto& v : s) v = static_cast<std::uint8_t>(1 - v);
  return SymmetricFunction(std::move(s));
}

SymmetricFunction SymmetricFunction::reflected() const {
  auto s = spectrum_;
  std::reverse(s.begin(), s.end());
  return SymmetricFunction(std::move(s));
}

std::string SymmetricFunction::to_text() const {
  std::ostringstream out;
  out << "n= " << arity() << "\n";
  for (std::size_t k = 0; k < spectrum_.size(); ++k) {
    out << (k ? " " : "") << int{spectrum_[k]};
  }
  out << "\n";
  return out.str();
}

SymmetricFunction SymmetricFunction::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token) || token.rfind("n=", 0) != 0) throw ParameterError("spectrum file must start with 'n='");
  std::string count = token.substr(2);
  if (count.empty() && !(in >> count)) throw ParameterError("spectrum file: missing n");
  int n = 0;
  auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
  if (ec != std::errc() || ptr != count.data() + count.size() || n < 1) {
    throw ParameterError("spectrum file: n must be a positive integer");
  }
  std::vector<std::uint8_t> spectrum;
  int bit = 0;
  while (in >> bit) {
    if (bit != 0 && bit != 1) throw ParameterError("spectrum file: entries must be 0 or 1");
    spectrum.push_back(static_cast<std::uint8_t>(bit));
  }
  if (!in.eof()) throw ParameterError("spectrum file: unreadable entry");
  if (static_cast<int>(spectrum.size()) != n + 1) {
    throw ParameterError("spectrum file: expected " + std::to_string(n + 1) + " entries");
  }
  return SymmetricFunction(std::move(spectrum));
}

SymmetricFunction make_named(const FamilySpec& family, int n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  std::vector<std::uint8_t> s(static_cast<std::size_t>(n) + 1);
  auto threshold = [&](int tau) {
    for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(k)] = k >= tau ? 1 : 0;
  };
  switch (family.family) {
    case Family::Or: threshold(1); break;
    case Family::And: threshold(n); break;
    case Family::Parity:
      for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k % 2);
      break;
    case Family::Majority: threshold((n + 2) / 2); break;
    case Family::Threshold:
      if (family.tau < 1 || family.tau > n) throw ParameterError("THRESHOLD requires 1 <= tau <= n");
      threshold(family.tau);
      break;
  }
  return SymmetricFunction(std::move(s));
}

int jump_parameter(const SymmetricFunction& f) {
  if (f.is_constant()) throw DomainError("jump parameter is undefined for constant functions");
  const int n = f.arity();
  for (int t = 1;; ++t) {
    if (t > n - t || constant_on(f.spectrum(), t, n - t)) return t;
  }
}

void Restriction::validate(int n) const {
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto* part : {&ones, &zeros, &free}) {
    for (int i : *part) {
      if (i < 1 || i > n) throw ParameterError("restriction index " + std::to_string(i) + " outside [1, n]");
      if (seen[static_cast<std::size_t>(i)]++) throw ParameterError("restriction index " + std::to_string(i) + " repeated");
    }
  }
  if (ones.size() + zeros.size() + free.size() != static_cast<std::size_t>(n)) {
    throw ParameterError("restriction does not cover every input index");
  }
}

BitString Restriction::assemble(const BitString& y, int n) const {
  if (y.size() != static_cast<int>(free.size())) throw ParameterError("assignment length differs from free bits");
  std::uint64_t bits = 0;
  for (int i : ones) bits |= std::uint64_t{1} << (i - 1);
  for (std::size_t j = 0; j < free.size(); ++j) {
    if (y[static_cast<int>(j) + 1]) bits |= std::uint64_t{1} << (free[j] - 1);
  }
  return BitString(n, bits);
}

SymmetricFunction restrict(const SymmetricFunction& f, const Restriction& r) {
  r.validate(f.arity());
  if (r.free.empty()) throw ParameterError("restriction leaves no free bits");
  const auto base = r.ones.size();
  std::vector<std::uint8_t> s(r.free.size() + 1);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = f.spectrum()[k + base];
  return SymmetricFunction(std::move(s));
}

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::Identity: return "identity";
    case Polarity::Negated: return "negated";
    case Polarity::Reflected: return "reflected";
    case Polarity::ReflectedNegated: return "reflected-negated";
  }
  return "?";
}

OrEmbedding embed_or(const SymmetricFunction& f) {
  const int n = f.arity();
  const int t = jump_parameter(f);
  if (4 * t >= n) throw NotApplicableError("OR embedding needs t < n/4");
  const std::uint8_t c = f.spectrum()[static_cast<std::size_t>(t)];

  const SideEmbedding low = low_side(f.spectrum(), t, c);
  const auto mirrored = f.reflected();
  const SideEmbedding high = low_side(mirrored.spectrum(), t, c);

  const bool use_high = high.jump >= 0 && (low.jump < 0 || high.m > low.m);
  const SideEmbedding& side = use_high ? high : low;

  // Indices 1..jump carry the jump weight, the next m are free, the rest pin
  // the remaining weight below the next level change.
  OrEmbedding e;
  e.m = side.m;
  std::vector<int> lead(static_cast<std::size_t>(side.jump));
  std::iota(lead.begin(), lead.end(), 1);
  for (int i = side.jump + 1; i <= side.jump + side.m; ++i) e.restriction.free.push_back(i);
  std::vector<int> tail;
  for (int i = side.jump + side.m + 1; i <= n; ++i) tail.push_back(i);
  if (use_high) {
    e.restriction.zeros = std::move(lead);
    e.restriction.ones = std::move(tail);
    e.polarity = side.negated ? Polarity::ReflectedNegated : Polarity::Reflected;
  } else {
    e.restriction.ones = std::move(lead);
    e.restriction.zeros = std::move(tail);
    e.polarity = side.negated ? Polarity::Negated : Polarity::Identity;
  }
  return e;
}

bool embedding_holds(const SymmetricFunction& f, const OrEmbedding& e) {
  const auto g = restrict(f, e.restriction);
  const int m = e.m;
  if (g.arity() != m) return false;
  for (int k = 0; k <= m; ++k) {
    const int or_value = k > 0 ? 1 : 0;
    int observed = 0;
    int expected = or_value;
    switch (e.polarity) {
      case Polarity::Identity: observed = g.at_weight(k); break;
      case Polarity::Negated: observed = g.at_weight(k); expected = 1 - or_value; break;
      case Polarity::Reflected: observed = g.at_weight(m - k); break;
      case Polarity::ReflectedNegated: observed = g.at_weight(m - k); expected = 1 - or_value; break;
    }
    if (observed != expected) return false;
  }
  return true;
}

}  // namespace qdeg
