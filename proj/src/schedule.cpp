#include "pjlab/schedule.hpp"

#include <cmath>

namespace pjlab {

namespace {

constexpr double kLog2_3 = 1.5849625007211562;
constexpr double kLog2_10 = 3.321928094887362;
// doubles go denormal-zero below 2^-1074
constexpr double kDoubleFloorLog2 = -1074.0;

double log2_rat(const Rat& q) {
  // exact enough for reporting: split into numerator/denominator bit counts
  double n = static_cast<double>(bit_size(Int(numerator(q))));
  double d = static_cast<double>(bit_size(Int(denominator(q))));
  if (n < 500 && d < 500) return std::log2(to_double(q));
  // large operands: log2(a/b) = log2(a) - log2(b) via msb + leading bits
  auto approx = [](const Int& v) {
    std::size_t bits = bit_size(v);
    Int top = bits > 64 ? Int(v >> (bits - 64)) : v;
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits > 64 ? bits - 64 : 0);
  };
  return approx(Int(numerator(q))) - approx(Int(denominator(q)));
}

// base^exp if the result stays under the budget
std::optional<Rat> pow_within(const Rat& base, long long exp, std::size_t budget) {
  if (exp == 0) return Rat(1);
  double predicted = static_cast<double>(bit_size(base)) * static_cast<double>(exp < 0 ? -exp : exp);
  if (predicted > static_cast<double>(budget)) return std::nullopt;
  Rat v = rat_pow(base, exp);
  if (bit_size(v) > budget) return std::nullopt;
  return v;
}

std::optional<Rat> mul_within(const std::optional<Rat>& a, const std::optional<Rat>& b,
                              std::size_t budget) {
  if (!a || !b) return std::nullopt;
  if (bit_size(*a) + bit_size(*b) > budget + 64) return std::nullopt;
  Rat v = *a * *b;
  if (bit_size(v) > budget) return std::nullopt;
  return v;
}

void finish(ScheduleField& f) {
  f.underflows_double = f.log2 < kDoubleFloorLog2;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "pbiased" || s == "p-biased") return Mode::PBiased;
  if (s == "general") return Mode::General;
  fail(Errc::UsageError, "mode must be pbiased or general");
}

const Rat& ParameterSchedule::need(const ScheduleField& f) const {
  if (!f.exact)
    fail(Errc::ScheduleInfeasible,
         "constant " + f.name + " (log2 = " + std::to_string(f.log2) +
             ") exceeds the exact-arithmetic bit budget of " + std::to_string(bit_budget) +
             " bits; override it to run at desk scale");
  return *f.exact;
}

bool ParameterSchedule::any_overridden() const {
  for (const auto* f : fields())
    if (f->overridden) return true;
  return false;
}

std::vector<const ScheduleField*> ParameterSchedule::fields() const {
  if (mode == Mode::PBiased) return {&eps0, &k, &eps1, &delta};
  return {&eps0, &k, &eps1, &delta, &delta0, &eps2};
}

const ScheduleField* ParameterSchedule::field(const std::string& name) const {
  for (const auto* f : fields())
    if (f->name == name) return f;
  return nullptr;
}

std::optional<long long> as_integer(const Rat& q) {
  if (denominator(q) != 1) return std::nullopt;
  Int n = numerator(q);
  if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
    return std::nullopt;
  return n.convert_to<long long>();
}

ParameterSchedule make_schedule(Mode mode, long long C, const Rat& epsilon,
                                const std::map<std::string, Rat>& overrides,
                                std::size_t bit_budget) {
  require(C >= 1, Errc::DomainError, "need C >= 1");
  require(epsilon > 0 && epsilon <= 1, Errc::DomainError, "need epsilon in (0,1]");
  for (const auto& [key, v] : overrides) {
    require(v > 0, Errc::DomainError, "override " + key + " must be positive");
    require(key == "eps0" || key == "k" || key == "eps1" || key == "delta" ||
                key == "delta0" || key == "eps2",
            Errc::UsageError, "unknown override key: " + key);
  }

  ParameterSchedule s;
  s.mode = mode;
  s.C = C;
  s.epsilon = epsilon;
  s.bit_budget = bit_budget;

  auto take = [&](const char* name, ScheduleField& f) {
    auto it = overrides.find(name);
    f.name = name;
    if (it == overrides.end()) return false;
    f.exact = it->second;
    f.log2 = log2_rat(it->second);
    f.overridden = true;
    finish(f);
    return true;
  };

  // eps0 = 1e-3 eps
  if (!take("eps0", s.eps0)) {
    s.eps0.exact = epsilon / 1000;
    s.eps0.log2 = log2_rat(*s.eps0.exact);
    finish(s.eps0);
  }

  // k = C / eps0
  if (!take("k", s.k)) {
    if (s.eps0.exact) {
      s.k.exact = Rat(C) / *s.eps0.exact;
      s.k.log2 = log2_rat(*s.k.exact);
    } else {
      s.k.log2 = std::log2(static_cast<double>(C)) - s.eps0.log2;
    }
    finish(s.k);
  }

  // a double view of k for the log formulas
  double kd = s.k.exact ? to_double(*s.k.exact) : std::exp2(s.k.log2);
  std::optional<long long> ki;  // integer k, needed for exact exponentiation
  if (s.k.exact) ki = as_integer(*s.k.exact);

  // eps1 = 3^(-10 k^2) eps0^(10 k)
  if (!take("eps1", s.eps1)) {
    s.eps1.log2 = -10.0 * kd * kd * kLog2_3 + 10.0 * kd * s.eps0.log2;
    if (ki && s.eps0.exact) {
      auto a = pow_within(Rat(1, 3), 10 * *ki * *ki, bit_budget);
      auto b = pow_within(*s.eps0.exact, 10 * *ki, bit_budget);
      s.eps1.exact = mul_within(a, b, bit_budget);
    }
    finish(s.eps1);
  }

  // delta: pbiased 2^(-10^2 k^2); general 2^(-10^3 k^2) eps1^10
  if (!take("delta", s.delta)) {
    if (mode == Mode::PBiased) {
      s.delta.log2 = -100.0 * kd * kd;
      if (ki) s.delta.exact = pow_within(Rat(1, 2), 100 * *ki * *ki, bit_budget);
    } else {
      s.delta.log2 = -1000.0 * kd * kd + 10.0 * s.eps1.log2;
      if (ki && s.eps1.exact) {
        auto a = pow_within(Rat(1, 2), 1000 * *ki * *ki, bit_budget);
        auto b = pow_within(*s.eps1.exact, 10, bit_budget);
        s.delta.exact = mul_within(a, b, bit_budget);
      }
    }
    finish(s.delta);
  }

  if (mode == Mode::General) {
    // delta0 = 2^(-2k)
    if (!take("delta0", s.delta0)) {
      s.delta0.log2 = -2.0 * kd;
      if (ki) s.delta0.exact = pow_within(Rat(1, 2), 2 * *ki, bit_budget);
      finish(s.delta0);
    }
    // eps2 = delta^(10k)
    if (!take("eps2", s.eps2)) {
      s.eps2.log2 = 10.0 * kd * s.delta.log2;
      if (ki && s.delta.exact) s.eps2.exact = pow_within(*s.delta.exact, 10 * *ki, bit_budget);
      finish(s.eps2);
    }
  } else {
    s.delta0.name = "delta0";
    s.eps2.name = "eps2";
  }

  return s;
}

}  // namespace pjlab
